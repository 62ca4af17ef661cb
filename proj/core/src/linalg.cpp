#include "pcadist/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <stdexcept>
#include <string>
#include <utility>

namespace pcadist {

namespace {

void check_orthonormal(const Eigen::MatrixXd& columns) {
    if (columns.cols() > columns.rows()) {
        throw std::invalid_argument("Basis: more orthonormal columns than dimensions");
    }
    const Eigen::MatrixXd gram = columns.transpose() * columns;
    const double deviation =
        (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (deviation > 1e-10) {
        throw std::invalid_argument("Basis: columns not orthonormal (max deviation " +
                                    std::to_string(deviation) + ")");
    }
}

}  // namespace

Basis::Basis(Eigen::MatrixXd cols, bool orthonormal_flag)
    : columns(std::move(cols)), orthonormal(orthonormal_flag) {
    if (orthonormal && columns.size() > 0) {
        check_orthonormal(columns);
    }
}

Basis Basis::from_vectors(const std::vector<Eigen::VectorXd>& vectors, bool orthonormal_flag) {
    if (vectors.empty()) {
        throw std::invalid_argument("Basis: no vectors given");
    }
    const Eigen::Index dim = vectors.front().size();
    Eigen::MatrixXd cols(dim, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != dim) {
            throw std::invalid_argument("Basis: vector " + std::to_string(j) + " has dimension " +
                                        std::to_string(vectors[j].size()) + ", expected " +
                                        std::to_string(dim));
        }
        cols.col(static_cast<Eigen::Index>(j)) = vectors[j];
    }
    return Basis(std::move(cols), orthonormal_flag);
}

void fix_column_signs(Eigen::MatrixXd& columns) {
    for (Eigen::Index j = 0; j < columns.cols(); ++j) {
        Eigen::Index imax = 0;
        columns.col(j).cwiseAbs().maxCoeff(&imax);
        if (columns(imax, j) < 0.0) {
            columns.col(j) = -columns.col(j);
        }
    }
}

Basis orthonormal_basis(const Eigen::MatrixXd& generators) {
    if (generators.size() == 0 || generators.cols() == 0) {
        throw std::invalid_argument("orthonormal_basis: empty generator set");
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(generators, Eigen::ComputeThinU);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    if (!(sigma_max > 0.0)) {
        throw std::invalid_argument("orthonormal_basis: zero subspace");
    }
    const double cutoff = singular_value_cutoff(generators.rows(), generators.cols(), sigma_max);
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
    if (rank == 0) {
        throw std::invalid_argument("orthonormal_basis: zero subspace");
    }
    Eigen::MatrixXd q = svd.matrixU().leftCols(rank);
    fix_column_signs(q);
    return Basis(std::move(q), true);
}

Basis orthonormal_basis(const Basis& generators) {
    return orthonormal_basis(generators.columns);
}

Eigen::VectorXd apply_residual(const Basis& q, const Eigen::VectorXd& x) {
    if (!q.orthonormal) {
        throw std::invalid_argument("apply_residual: basis must be orthonormal");
    }
    if (x.size() != q.dimension()) {
        throw std::invalid_argument("apply_residual: vector dimension " +
                                    std::to_string(x.size()) + " does not match basis dimension " +
                                    std::to_string(q.dimension()));
    }
    Eigen::VectorXd result = q.columns * (q.columns.transpose() * x);
    result -= x;
    return result;
}

Eigen::VectorXd residual_column(const Basis& q, Eigen::Index j) {
    if (!q.orthonormal) {
        throw std::invalid_argument("residual_column: basis must be orthonormal");
    }
    if (j < 0 || j >= q.dimension()) {
        throw std::out_of_range("residual_column: index " + std::to_string(j) +
                                " out of range for dimension " + std::to_string(q.dimension()));
    }
    Eigen::VectorXd result = q.columns * q.columns.row(j).transpose();
    result(j) -= 1.0;
    return result;
}

SpdSolution solve_spd(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("solve_spd: matrix is not square");
    }
    if (a.rows() == 0) {
        throw std::invalid_argument("solve_spd: empty system");
    }
    if (b.size() != a.rows()) {
        throw std::invalid_argument("solve_spd: right-hand side dimension mismatch");
    }
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::invalid_argument("solve_spd: not a Gram matrix");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("solve_spd: eigendecomposition failed");
    }
    const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
    const double lambda_max = lambda(lambda.size() - 1);
    const double cutoff = singular_value_cutoff(a.rows(), a.cols(), std::abs(lambda_max));
    if (lambda(0) < -std::max(cutoff, 1e-9)) {
        throw std::invalid_argument("solve_spd: matrix is not positive semidefinite");
    }

    // Minimum-norm solution through the spectral pseudo-inverse.
    Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) > cutoff) {
            x += (eig.eigenvectors().col(i).dot(b) / lambda(i)) * eig.eigenvectors().col(i);
            ++rank;
        }
    }
    return {std::move(x), rank == a.rows()};
}

ResidualMap::ResidualMap(Basis q) : basis_(std::move(q)) {
    if (!basis_.orthonormal) {
        throw std::invalid_argument("ResidualMap: basis must be orthonormal");
    }
}

}  // namespace pcadist
