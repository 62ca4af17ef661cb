#pragma once

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <vector>

namespace pcadist {

/// Singular values at or below this cutoff count as zero when deciding
/// numerical rank.
inline double singular_value_cutoff(Eigen::Index rows, Eigen::Index cols, double sigma_max) {
    const auto dim = static_cast<double>(std::max(rows, cols));
    return dim * std::numeric_limits<double>::epsilon() * sigma_max;
}

/// Zero test for residual directions (w1, W_k columns) in scaled units.
inline double residual_zero_threshold(Eigen::Index dimension) {
    return 1e-10 * std::sqrt(static_cast<double>(dimension));
}

/// Ordered set of same-dimension column vectors, optionally known to be
/// orthonormal. Construction with the orthonormal flag set verifies pairwise
/// dot products against the Kronecker delta to 1e-10.
struct Basis {
    Eigen::MatrixXd columns;  // dimension x count
    bool orthonormal = false;

    Basis() = default;
    Basis(Eigen::MatrixXd cols, bool orthonormal_flag);

    /// Joins vectors into a Basis; throws on mismatched vector dimensions.
    static Basis from_vectors(const std::vector<Eigen::VectorXd>& vectors,
                              bool orthonormal_flag = false);

    Eigen::Index dimension() const { return columns.rows(); }
    Eigen::Index count() const { return columns.cols(); }
};

/// Rank-revealing orthonormalization of span(P). The result has
/// numerical-rank(P) columns and spans the same subspace; covers both the
/// independent-generator and degenerate-generator cases. Column signs are
/// fixed so the entry of largest magnitude in each column is positive.
Basis orthonormal_basis(const Eigen::MatrixXd& generators);
Basis orthonormal_basis(const Basis& generators);

/// Residual of x against span(Q): Wx = Q(Q^T x) - x, computed in O(m*r)
/// without forming the m x m projector. ||Wx|| is the Euclidean distance
/// from x to span(Q). Q must be orthonormal.
Eigen::VectorXd apply_residual(const Basis& q, const Eigen::VectorXd& x);

/// Column j of the residual map: w_j = Q(Q^T e_j) - e_j.
Eigen::VectorXd residual_column(const Basis& q, Eigen::Index j);

struct SpdSolution {
    Eigen::VectorXd x;
    bool unique = false;
};

/// Solves A x = b for symmetric positive-semidefinite A (a Gram matrix).
/// Nonsingular A gives the unique solution; singular-but-consistent A gives
/// the minimum-norm solution with unique=false.
SpdSolution solve_spd(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

/// Residual map W = QQ^T - E for an orthonormal basis Q; W^2 = -W and
/// ||W x|| is the distance from x to the spanned subspace.
class ResidualMap {
public:
    explicit ResidualMap(Basis q);

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return apply_residual(basis_, x); }
    Eigen::VectorXd column(Eigen::Index j) const { return residual_column(basis_, j); }

    Eigen::Index dimension() const { return basis_.dimension(); }
    const Basis& basis() const { return basis_; }

private:
    Basis basis_;
};

/// Fixes column signs in place: largest-magnitude entry of each column
/// becomes positive (first such entry on ties).
void fix_column_signs(Eigen::MatrixXd& columns);

}  // namespace pcadist
