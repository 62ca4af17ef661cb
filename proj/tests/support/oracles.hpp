// Independent reference implementations used to freeze expected values.
// Everything here works with dense projectors and brute-force searches and
// deliberately avoids the factored code paths under test.
#pragma once

#include <Eigen/Dense>

#include <pcadist/pca.hpp>
#include <pcadist/predict.hpp>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

/// Orthogonal projector onto span(P) through the Moore-Penrose
/// pseudo-inverse: H = P P^+.
inline Eigen::MatrixXd dense_projector(const Eigen::MatrixXd& p) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(p);
    return p * cod.pseudoInverse();
}

/// Dense residual map W = H - E.
inline Eigen::MatrixXd dense_residual(const Eigen::MatrixXd& p) {
    return dense_projector(p) - Eigen::MatrixXd::Identity(p.rows(), p.rows());
}

/// A prediction problem in scaled, missing-first coordinates, built from a
/// model and task without touching the library's permutation layer.
struct DenseProblem {
    Eigen::MatrixXd residual;       // W, m x m
    Eigen::VectorXd known;          // [0_k ; l']
    Eigen::Index k = 0;
    Eigen::MatrixXd metric;         // empty = Euclidean
    std::vector<Eigen::Index> order;  // original coordinate per permuted slot
};

inline DenseProblem dense_problem(const pcadist::PrincipalModel& model,
                                  const pcadist::PredictionTask& task,
                                  const Eigen::MatrixXd* metric = nullptr) {
    const Eigen::Index m = model.dimension();
    DenseProblem prob;
    prob.k = static_cast<Eigen::Index>(task.missing_indices.size());
    prob.order = task.missing_indices;
    for (const auto& [idx, value] : task.known_values) prob.order.push_back(idx);

    Eigen::MatrixXd generators(m, model.component_count());
    for (Eigen::Index i = 0; i < m; ++i) {
        generators.row(i) = model.components.columns.row(prob.order[static_cast<std::size_t>(i)]);
    }
    prob.residual = dense_residual(generators);

    prob.known = Eigen::VectorXd::Zero(m);
    for (Eigen::Index i = prob.k; i < m; ++i) {
        const Eigen::Index orig = prob.order[static_cast<std::size_t>(i)];
        prob.known(i) = model.scaling.scale_value(orig, task.known_values.at(orig));
    }

    if (metric != nullptr) {
        prob.metric.resize(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) {
                prob.metric(i, j) = (*metric)(prob.order[static_cast<std::size_t>(i)],
                                              prob.order[static_cast<std::size_t>(j)]);
            }
        }
    }
    return prob;
}

inline double objective(const DenseProblem& prob, const Eigen::VectorXd& t) {
    Eigen::VectorXd l = prob.known;
    l.head(prob.k) = t;
    const Eigen::VectorXd wl = prob.residual * l;
    if (prob.metric.size() == 0) return wl.squaredNorm();
    return wl.dot(prob.metric * wl);
}

/// Exact quadratic line minimization along coordinate `axis` through three
/// samples; returns the new coordinate value (unchanged if flat).
inline double line_minimum(const DenseProblem& prob, Eigen::VectorXd t, Eigen::Index axis) {
    const double center = t(axis);
    const double step = 1.0;
    t(axis) = center - step;
    const double d_minus = objective(prob, t);
    t(axis) = center;
    const double d_zero = objective(prob, t);
    t(axis) = center + step;
    const double d_plus = objective(prob, t);
    const double curvature = d_minus + d_plus - 2.0 * d_zero;  // 2 a2 step^2
    if (curvature <= 1e-14 * std::max(1.0, d_zero)) return center;
    return center - step * (d_plus - d_minus) / (2.0 * curvature);
}

/// Coarse grid over [lo, hi]^k followed by cyclic coordinate descent with
/// exact quadratic line searches. The objective is a convex quadratic, so
/// this converges to a global minimizer.
inline Eigen::VectorXd grid_refine_minimizer(const DenseProblem& prob, double lo = -10.0,
                                             double hi = 10.0, int grid_steps = 21) {
    const Eigen::Index k = prob.k;
    Eigen::VectorXd best = Eigen::VectorXd::Zero(k);
    double best_value = objective(prob, best);

    std::vector<int> counter(static_cast<std::size_t>(k), 0);
    const double step = (hi - lo) / static_cast<double>(grid_steps - 1);
    Eigen::VectorXd t(k);
    while (true) {
        for (Eigen::Index c = 0; c < k; ++c) {
            t(c) = lo + step * counter[static_cast<std::size_t>(c)];
        }
        const double value = objective(prob, t);
        if (value < best_value) {
            best_value = value;
            best = t;
        }
        Eigen::Index digit = 0;
        while (digit < k) {
            if (++counter[static_cast<std::size_t>(digit)] < grid_steps) break;
            counter[static_cast<std::size_t>(digit)] = 0;
            ++digit;
        }
        if (digit == k) break;
    }

    for (int sweep = 0; sweep < 400; ++sweep) {
        double moved = 0.0;
        for (Eigen::Index axis = 0; axis < k; ++axis) {
            const double updated = line_minimum(prob, best, axis);
            moved = std::max(moved, std::abs(updated - best(axis)));
            best(axis) = updated;
        }
        if (moved < 1e-13) break;
    }
    return best;
}

/// Golden-section search on the 1-D objective; independent of the quadratic
/// structure.
inline double golden_section_minimizer(const DenseProblem& prob, double lo = -50.0,
                                       double hi = 50.0) {
    if (prob.k != 1) throw std::invalid_argument("golden_section_minimizer: k must be 1");
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    Eigen::VectorXd t(1);
    const auto eval = [&](double x) {
        t(0) = x;
        return objective(prob, t);
    };
    double a = lo, b = hi;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = eval(c), fd = eval(d);
    for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = eval(d);
        }
    }
    return 0.5 * (a + b);
}

/// Imputed value for a k=1 task in original units, via golden section on the
/// dense objective.
inline double brute_force_imputed(const pcadist::PrincipalModel& model,
                                  const pcadist::PredictionTask& task) {
    const DenseProblem prob = dense_problem(model, task);
    const double t = golden_section_minimizer(prob);
    return model.scaling.unscale_value(task.missing_indices.front(), t);
}

// --- random instance helpers -------------------------------------------

inline Eigen::MatrixXd random_matrix(std::mt19937& gen, Eigen::Index rows, Eigen::Index cols,
                                     double scale = 1.0) {
    std::normal_distribution<double> dist(0.0, scale);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = dist(gen);
    }
    return m;
}

inline Eigen::MatrixXd random_orthonormal(std::mt19937& gen, Eigen::Index rows,
                                          Eigen::Index cols) {
    const Eigen::MatrixXd raw = random_matrix(gen, rows, cols);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
    return q;
}

inline Eigen::MatrixXd random_spd(std::mt19937& gen, Eigen::Index n) {
    const Eigen::MatrixXd a = random_matrix(gen, n, n);
    return a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
}

/// Synthetic fitted model with random orthonormal components and random
/// scaling; bypasses fit_pca so predictor tests control the subspace
/// exactly.
inline pcadist::PrincipalModel synthetic_model(std::mt19937& gen, Eigen::Index m, Eigen::Index n,
                                               bool random_scaling = true) {
    pcadist::PrincipalModel model;
    model.column_names = pcadist::default_column_names(m);
    std::uniform_real_distribution<double> mean_dist(-3.0, 3.0);
    std::uniform_real_distribution<double> std_dist(0.5, 2.0);
    model.scaling.means.resize(m);
    model.scaling.stds.resize(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        model.scaling.means(j) = random_scaling ? mean_dist(gen) : 0.0;
        model.scaling.stds(j) = random_scaling ? std_dist(gen) : 1.0;
        model.scaling.modes.push_back(pcadist::ColumnMode::Standardize);
    }
    model.components = pcadist::Basis(random_orthonormal(gen, m, n), true);
    Eigen::VectorXd variance(n);
    for (Eigen::Index i = 0; i < n; ++i) variance(i) = static_cast<double>(n - i);
    model.explained_variance = variance;
    return model;
}

/// Identity-scaling model with the given components; tasks then live in
/// scaled coordinates directly.
inline pcadist::PrincipalModel axis_model(const Eigen::MatrixXd& components) {
    pcadist::PrincipalModel model;
    const Eigen::Index m = components.rows();
    model.column_names = pcadist::default_column_names(m);
    model.scaling.means = Eigen::VectorXd::Zero(m);
    model.scaling.stds = Eigen::VectorXd::Ones(m);
    model.scaling.modes.assign(static_cast<std::size_t>(m), pcadist::ColumnMode::Standardize);
    model.components = pcadist::Basis(components, true);
    model.explained_variance = Eigen::VectorXd::Ones(components.cols());
    return model;
}

}  // namespace oracle
