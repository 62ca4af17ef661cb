#include "pcadist/predict.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcadist {

MetricSpec MetricSpec::general(Eigen::MatrixXd m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("MetricSpec: metric matrix must be square and nonempty");
    }
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::invalid_argument("MetricSpec: metric matrix is not symmetric");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("MetricSpec: metric matrix is not positive definite");
    }
    MetricSpec spec;
    spec.matrix_ = std::move(m);
    return spec;
}

namespace {

/// Scaled, missing-first view of one prediction problem. order[i] is the
/// original coordinate sitting at permuted position i.
struct PreparedTask {
    Eigen::Index m = 0;
    Eigen::Index k = 0;
    std::vector<Eigen::Index> order;
    Basis q;                    // permuted orthonormal components
    Eigen::VectorXd l_known;    // [0_k ; l'], scaled units
    Eigen::MatrixXd metric;     // permuted M; empty for Euclidean
};

void validate_task(const PrincipalModel& model, const PredictionTask& task) {
    const Eigen::Index m = model.dimension();
    if (model.component_count() < 1) {
        throw std::invalid_argument("prediction: model has no components");
    }
    if (task.missing_indices.empty()) {
        throw std::invalid_argument("prediction: record has no missing coordinates");
    }
    if (task.known_values.empty()) {
        throw std::invalid_argument("prediction: record has no known coordinates");
    }

    std::vector<int> seen(static_cast<std::size_t>(m), 0);
    for (Eigen::Index idx : task.missing_indices) {
        if (idx < 0 || idx >= m) {
            throw std::out_of_range("prediction: missing index " + std::to_string(idx) +
                                    " out of range for dimension " + std::to_string(m));
        }
        if (seen[static_cast<std::size_t>(idx)]++) {
            throw std::invalid_argument("prediction: coordinate " + std::to_string(idx) +
                                        " listed more than once as missing");
        }
    }
    for (const auto& [idx, value] : task.known_values) {
        if (idx < 0 || idx >= m) {
            throw std::out_of_range("prediction: known index " + std::to_string(idx) +
                                    " out of range for dimension " + std::to_string(m));
        }
        if (seen[static_cast<std::size_t>(idx)]++) {
            throw std::invalid_argument("prediction: coordinate " + std::to_string(idx) +
                                        " is both known and missing");
        }
        if (!std::isfinite(value)) {
            throw std::invalid_argument("prediction: known value for coordinate " +
                                        std::to_string(idx) + " is not finite");
        }
    }
    for (Eigen::Index j = 0; j < m; ++j) {
        if (!seen[static_cast<std::size_t>(j)]) {
            throw std::invalid_argument("prediction: coordinate " + std::to_string(j) +
                                        " neither known nor missing");
        }
    }
}

PreparedTask prepare(const PrincipalModel& model, const PredictionTask& task,
                     const MetricSpec& metric) {
    validate_task(model, task);

    PreparedTask prep;
    prep.m = model.dimension();
    prep.k = static_cast<Eigen::Index>(task.missing_indices.size());

    prep.order = task.missing_indices;
    prep.order.reserve(static_cast<std::size_t>(prep.m));
    for (const auto& [idx, value] : task.known_values) {
        prep.order.push_back(idx);  // std::map iterates in ascending index order
    }

    // Rank-revealing pass implements the independent/degenerate generator
    // branch; permuting rows afterwards preserves orthonormality.
    const Basis ortho = orthonormal_basis(model.components);
    Eigen::MatrixXd permuted(prep.m, ortho.count());
    for (Eigen::Index i = 0; i < prep.m; ++i) {
        permuted.row(i) = ortho.columns.row(prep.order[static_cast<std::size_t>(i)]);
    }
    prep.q = Basis(std::move(permuted), true);

    prep.l_known = Eigen::VectorXd::Zero(prep.m);
    for (Eigen::Index i = prep.k; i < prep.m; ++i) {
        const Eigen::Index orig = prep.order[static_cast<std::size_t>(i)];
        prep.l_known(i) =
            model.scaling.scale_value(orig, task.known_values.at(orig));
    }

    if (!metric.is_euclidean()) {
        const Eigen::MatrixXd& m_full = metric.matrix();
        if (m_full.rows() != prep.m) {
            throw std::invalid_argument("prediction: metric dimension " +
                                        std::to_string(m_full.rows()) +
                                        " does not match model dimension " +
                                        std::to_string(prep.m));
        }
        prep.metric.resize(prep.m, prep.m);
        for (Eigen::Index i = 0; i < prep.m; ++i) {
            for (Eigen::Index j = 0; j < prep.m; ++j) {
                prep.metric(i, j) = m_full(prep.order[static_cast<std::size_t>(i)],
                                           prep.order[static_cast<std::size_t>(j)]);
            }
        }
    }
    return prep;
}

double residual_norm(const PreparedTask& prep, const Eigen::VectorXd& t) {
    Eigen::VectorXd l = prep.l_known;
    l.head(prep.k) = t;
    const Eigen::VectorXd wl = apply_residual(prep.q, l);
    if (prep.metric.size() == 0) {
        return wl.norm();
    }
    return std::sqrt(std::max(0.0, wl.dot(prep.metric * wl)));
}

PredictionResult finish(const PrincipalModel& model, const PreparedTask& prep,
                        Eigen::VectorXd t, bool unique, bool invariant) {
    PredictionResult result;
    result.distance = residual_norm(prep, t);
    for (Eigen::Index i = 0; i < prep.k; ++i) {
        const Eigen::Index orig = prep.order[static_cast<std::size_t>(i)];
        result.imputed[orig] = model.scaling.unscale_value(orig, t(i));
    }
    result.t_pred = std::move(t);
    result.unique = unique && !invariant;
    result.distance_invariant = invariant;
    return result;
}

}  // namespace

PredictionResult predict_line(const PrincipalModel& model, const PredictionTask& task) {
    if (task.missing_indices.size() != 1) {
        throw std::invalid_argument(
            "predict_line handles exactly one missing coordinate; use predict_space");
    }
    if (!task.metric.is_euclidean()) {
        throw std::invalid_argument(
            "predict_line is Euclidean; use predict_line_metric for a general metric");
    }
    const PreparedTask prep = prepare(model, task, MetricSpec::euclidean());
    const Eigen::VectorXd w1 = residual_column(prep.q, 0);
    const double tau = residual_zero_threshold(prep.m);

    Eigen::VectorXd t(1);
    if (w1.norm() <= tau) {
        t(0) = 0.0;  // column-mean convention
        return finish(model, prep, std::move(t), false, true);
    }
    const Eigen::VectorXd wl = apply_residual(prep.q, prep.l_known);  // W' l'
    t(0) = -w1.dot(wl) / w1.squaredNorm();
    return finish(model, prep, std::move(t), true, false);
}

PredictionResult predict_line_quadfit(const PrincipalModel& model, const PredictionTask& task) {
    if (task.missing_indices.size() != 1) {
        throw std::invalid_argument(
            "predict_line_quadfit handles exactly one missing coordinate");
    }
    if (!task.metric.is_euclidean()) {
        throw std::invalid_argument("predict_line_quadfit is Euclidean only");
    }
    const PreparedTask prep = prepare(model, task, MetricSpec::euclidean());

    // Squared distance along the line is an exact quadratic; three samples
    // pin it down.
    const double samples[3] = {-1.0, 0.0, 1.0};
    Eigen::Vector3d d;
    Eigen::Matrix3d vandermonde;
    for (int i = 0; i < 3; ++i) {
        Eigen::VectorXd l = prep.l_known;
        l(0) = samples[i];
        d(i) = apply_residual(prep.q, l).squaredNorm();
        vandermonde(i, 0) = 1.0;
        vandermonde(i, 1) = samples[i];
        vandermonde(i, 2) = samples[i] * samples[i];
    }
    const Eigen::Vector3d coeffs = vandermonde.fullPivLu().solve(d);

    const double tau = residual_zero_threshold(prep.m);
    if (coeffs(2) < tau * tau) {
        throw std::runtime_error("predict_line_quadfit: distance invariant along line");
    }
    Eigen::VectorXd t(1);
    t(0) = -coeffs(1) / (2.0 * coeffs(2));
    return finish(model, prep, std::move(t), true, false);
}

PredictionResult predict_space(const PrincipalModel& model, const PredictionTask& task,
                               SpaceMethod method) {
    const Eigen::Index m = model.dimension();
    if (static_cast<Eigen::Index>(task.missing_indices.size()) >= m) {
        throw std::invalid_argument("predict_space: no known coordinates left");
    }
    const PreparedTask prep = prepare(model, task, task.metric);
    const Eigen::Index k = prep.k;
    const bool general_metric = prep.metric.size() > 0;
    if (general_metric && method == SpaceMethod::LeftInverse) {
        throw std::invalid_argument(
            "predict_space: the left-inverse path supports the Euclidean metric only");
    }

    Eigen::MatrixXd wk(prep.m, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        wk.col(i) = residual_column(prep.q, i);
    }
    const Eigen::VectorXd wl = apply_residual(prep.q, prep.l_known);  // W' l'

    const double tau = residual_zero_threshold(prep.m);
    if (wk.colwise().norm().maxCoeff() <= tau) {
        return finish(model, prep, Eigen::VectorXd::Zero(k), false, true);
    }

    if (method == SpaceMethod::LeftInverse) {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(wk, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd& sigma = svd.singularValues();
        const double cutoff = singular_value_cutoff(prep.m, k, sigma(0));
        if (sigma(k - 1) <= cutoff) {
            throw std::runtime_error("predict_space: left inverse unavailable (rank(W_k) < k)");
        }
        // W_k t = -W'l' solved through the QR left inverse R^-1 Q^T.
        Eigen::VectorXd t = Eigen::HouseholderQR<Eigen::MatrixXd>(wk).solve(-wl);
        return finish(model, prep, std::move(t), true, false);
    }

    Eigen::MatrixXd a(k, k);
    Eigen::VectorXd b(k);
    if (general_metric) {
        const Eigen::MatrixXd mwk = prep.metric * wk;
        a = wk.transpose() * mwk;
        b = -mwk.transpose() * wl;
    } else {
        a = wk.transpose() * wk;
        b = -wk.transpose() * wl;
    }
    a = 0.5 * (a + a.transpose());
    SpdSolution solution = solve_spd(a, b);
    return finish(model, prep, std::move(solution.x), solution.unique, false);
}

PredictionResult predict_line_metric(const PrincipalModel& model, const PredictionTask& task,
                                     const MetricSpec& metric) {
    if (task.missing_indices.size() != 1) {
        throw std::invalid_argument(
            "predict_line_metric handles exactly one missing coordinate");
    }
    const PreparedTask prep = prepare(model, task, metric);
    const Eigen::VectorXd w1 = residual_column(prep.q, 0);
    const double tau = residual_zero_threshold(prep.m);

    Eigen::VectorXd t(1);
    if (w1.norm() <= tau) {
        t(0) = 0.0;
        return finish(model, prep, std::move(t), false, true);
    }
    const Eigen::VectorXd wl = apply_residual(prep.q, prep.l_known);
    if (prep.metric.size() == 0) {
        t(0) = -w1.dot(wl) / w1.squaredNorm();
    } else {
        const Eigen::VectorXd mw1 = prep.metric * w1;
        t(0) = -mw1.dot(wl) / w1.dot(mw1);
    }
    return finish(model, prep, std::move(t), true, false);
}

PredictionResult impute_record(const PrincipalModel& model, const PredictionTask& task) {
    if (task.missing_indices.empty()) {
        throw std::invalid_argument("impute_record: record has no missing coordinates");
    }
    if (task.missing_indices.size() == 1) {
        return task.metric.is_euclidean() ? predict_line(model, task)
                                          : predict_line_metric(model, task, task.metric);
    }
    return predict_space(model, task, SpaceMethod::NormalSystem);
}

PredictionTask task_from_named(const PrincipalModel& model, const NamedRecord& record) {
    PredictionTask task;
    for (const auto& [name, value] : record.known_values) {
        const auto it = std::find(model.column_names.begin(), model.column_names.end(), name);
        if (it == model.column_names.end()) {
            throw std::invalid_argument("unknown column name \"" + name + "\"");
        }
        task.known_values[it - model.column_names.begin()] = value;
    }
    for (const std::string& name : record.missing_columns) {
        const auto it = std::find(model.column_names.begin(), model.column_names.end(), name);
        if (it == model.column_names.end()) {
            throw std::invalid_argument("unknown column name \"" + name + "\"");
        }
        task.missing_indices.push_back(it - model.column_names.begin());
    }
    return task;
}

PredictionResult impute_record(const PrincipalModel& model, const NamedRecord& record) {
    return impute_record(model, task_from_named(model, record));
}

}  // namespace pcadist
