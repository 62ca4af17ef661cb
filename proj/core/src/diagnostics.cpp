#include "pcadist/diagnostics.hpp"

#include "pcadist/pca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcadist {

namespace {

/// Fold components live in the fold's scaled frame. Mapping them through
/// original units into the full-data scaled frame puts both projectors in
/// one coordinate system, so exact-subspace data yields identical fold
/// subspaces regardless of per-fold scaling.
Basis fold_subspace_in_frame(const PrincipalModel& fold_model, const ScalingParams& frame) {
    Eigen::MatrixXd directions = fold_model.components.columns;
    for (Eigen::Index j = 0; j < directions.rows(); ++j) {
        const double to_original = fold_model.scaling.direction_scale(j);
        const double to_frame = frame.direction_scale(j);
        directions.row(j) *= to_original / to_frame;
    }
    return orthonormal_basis(directions);
}

Eigen::MatrixXd projected(const Basis& q, const Eigen::MatrixXd& points_t) {
    return q.columns * (q.columns.transpose() * points_t);
}

/// Uniform integer in [0, n) by rejection; stable across platforms for a
/// given generator state.
std::uint64_t bounded_uint(std::mt19937_64& gen, std::uint64_t n) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t draw = gen();
    while (draw >= limit) draw = gen();
    return draw % n;
}

double percentile(std::vector<double> values, double p) {
    std::sort(values.begin(), values.end());
    const double h = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

}  // namespace

InfluenceReport influence_scores(const DataMatrix& samples, int n_components, bool standardize) {
    const Eigen::Index s = samples.rows();
    const Eigen::Index m = samples.cols();
    if (s < 3) {
        throw std::invalid_argument("influence_scores: need at least 3 rows");
    }
    if (n_components < 1 || n_components > std::min<Eigen::Index>(s - 2, m)) {
        throw std::invalid_argument("influence_scores: n must be in [1, min(s-2, m)]");
    }

    PcaOptions options;
    options.selection = ComponentSelection::by_count(n_components);
    options.standardize = standardize;

    const PrincipalModel full = fit_pca(samples, options);
    const Eigen::MatrixXd points_t = full.scaling.apply(samples.values).transpose();  // m x s
    const Eigen::MatrixXd full_proj = projected(full.components, points_t);

    InfluenceReport report;
    report.baseline = (full_proj - points_t).norm();
    report.baseline_degenerate = report.baseline <= 1e-12 * std::max(1.0, points_t.norm());
    report.absolute.resize(s);
    report.relative.resize(s);

    for (Eigen::Index i = 0; i < s; ++i) {
        const DataMatrix fold = samples.without_rows({i});
        const PrincipalModel fold_model = fit_pca(fold, options);
        const Basis fold_basis = fold_subspace_in_frame(fold_model, full.scaling);
        report.absolute(i) = (full_proj - projected(fold_basis, points_t)).norm();
        report.relative(i) =
            report.baseline_degenerate ? 0.0 : report.absolute(i) / report.baseline;
    }
    return report;
}

OutlierRemoval remove_outliers(const DataMatrix& samples, int n_components, double fraction,
                               bool iterative, bool standardize) {
    if (fraction < 0.0 || fraction >= 0.5) {
        throw std::invalid_argument("remove_outliers: fraction must be in [0, 0.5)");
    }
    const Eigen::Index s = samples.rows();
    const auto count = static_cast<Eigen::Index>(std::ceil(fraction * static_cast<double>(s)));

    OutlierRemoval removal;
    removal.data = samples;
    if (count == 0) {
        return removal;
    }
    if (s - count < static_cast<Eigen::Index>(n_components) + 2) {
        throw std::invalid_argument("remove_outliers: removing " + std::to_string(count) +
                                    " rows would leave fewer than n+2 rows");
    }

    // Original row index of each surviving row.
    std::vector<Eigen::Index> labels(static_cast<std::size_t>(s));
    std::iota(labels.begin(), labels.end(), 0);

    if (iterative) {
        for (Eigen::Index step = 0; step < count; ++step) {
            const InfluenceReport report = influence_scores(removal.data, n_components,
                                                            standardize);
            Eigen::Index worst = 0;
            report.relative.maxCoeff(&worst);
            removal.removed.push_back(labels[static_cast<std::size_t>(worst)]);
            labels.erase(labels.begin() + worst);
            removal.data = removal.data.without_rows({worst});
        }
    } else {
        const InfluenceReport report = influence_scores(removal.data, n_components, standardize);
        std::vector<Eigen::Index> order(static_cast<std::size_t>(s));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
            return report.relative(a) > report.relative(b);
        });
        removal.removed.assign(order.begin(), order.begin() + count);
        removal.data = samples.without_rows(removal.removed);
    }
    return removal;
}

ValidationReport loo_cv(const DataMatrix& samples, int n_components, Eigen::Index target_column,
                        bool standardize) {
    const Eigen::Index s = samples.rows();
    const Eigen::Index m = samples.cols();
    if (target_column < 0 || target_column >= m) {
        throw std::out_of_range("loo_cv: target column " + std::to_string(target_column) +
                                " out of range");
    }
    if (s < static_cast<Eigen::Index>(n_components) + 2) {
        throw std::invalid_argument("loo_cv: need at least n+2 rows, got " + std::to_string(s));
    }

    PcaOptions options;
    options.selection = ComponentSelection::by_count(n_components);
    options.standardize = standardize;

    ValidationReport report;
    report.target_column = target_column;
    report.actual = samples.values.col(target_column);
    report.predicted.resize(s);
    report.squared_errors.resize(s);

    for (Eigen::Index i = 0; i < s; ++i) {
        const PrincipalModel fold_model = fit_pca(samples.without_rows({i}), options);
        PredictionTask task;
        task.missing_indices.push_back(target_column);
        for (Eigen::Index j = 0; j < m; ++j) {
            if (j != target_column) task.known_values[j] = samples.values(i, j);
        }
        const PredictionResult prediction = predict_line(fold_model, task);
        report.predicted(i) = prediction.imputed.at(target_column);
        const double err = report.predicted(i) - report.actual(i);
        report.squared_errors(i) = err * err;
    }
    report.mse = report.squared_errors.mean();
    return report;
}

std::vector<IntervalEstimate> resample_ci(const DataMatrix& samples, int n_components,
                                          const PredictionTask& task,
                                          const ResampleOptions& options) {
    const Eigen::Index s = samples.rows();
    if (options.replicates < 20) {
        throw std::invalid_argument("resample_ci: need at least 20 replicates");
    }
    if (!(options.level > 0.0) || !(options.level < 1.0)) {
        throw std::invalid_argument("resample_ci: level must be in (0, 1)");
    }
    if (options.method == ResampleMethod::Jackknife) {
        const Eigen::Index max_p = s - static_cast<Eigen::Index>(n_components) - 2;
        if (options.leave_out < 1 || static_cast<Eigen::Index>(options.leave_out) > max_p) {
            throw std::invalid_argument("resample_ci: jackknife p must be in [1, s-n-2]");
        }
    }

    PcaOptions fit_options;
    fit_options.selection = ComponentSelection::by_count(n_components);
    fit_options.standardize = options.standardize;

    const PrincipalModel full_model = fit_pca(samples, fit_options);
    const PredictionResult point = impute_record(full_model, task);

    const auto k = static_cast<std::size_t>(task.missing_indices.size());
    std::vector<std::vector<double>> draws(k);
    for (auto& d : draws) d.reserve(static_cast<std::size_t>(options.replicates));

    std::mt19937_64 gen(options.seed);
    int skipped = 0;
    std::vector<Eigen::Index> keep;
    for (int rep = 0; rep < options.replicates; ++rep) {
        keep.clear();
        if (options.method == ResampleMethod::Bootstrap) {
            for (Eigen::Index i = 0; i < s; ++i) {
                keep.push_back(static_cast<Eigen::Index>(
                    bounded_uint(gen, static_cast<std::uint64_t>(s))));
            }
        } else {
            // Partial Fisher-Yates: a uniform (s - p)-subset, kept sorted.
            std::vector<Eigen::Index> pool(static_cast<std::size_t>(s));
            std::iota(pool.begin(), pool.end(), 0);
            const auto take = static_cast<std::size_t>(s - options.leave_out);
            for (std::size_t i = 0; i < take; ++i) {
                const std::size_t j =
                    i + static_cast<std::size_t>(
                            bounded_uint(gen, static_cast<std::uint64_t>(pool.size() - i)));
                std::swap(pool[i], pool[j]);
            }
            keep.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take));
            std::sort(keep.begin(), keep.end());
        }

        PredictionResult replicate;
        try {
            const PrincipalModel model = fit_pca(samples.select_rows(keep), fit_options);
            if (model.clamped) {
                ++skipped;  // replicate rank < n
                continue;
            }
            replicate = impute_record(model, task);
        } catch (const std::runtime_error&) {
            ++skipped;  // zero-variance replicate
            continue;
        }
        for (std::size_t c = 0; c < k; ++c) {
            draws[c].push_back(replicate.imputed.at(task.missing_indices[c]));
        }
    }

    if (skipped * 2 > options.replicates) {
        throw std::runtime_error("resample_ci: more than half of the replicates were rank "
                                 "deficient (" +
                                 std::to_string(skipped) + " of " +
                                 std::to_string(options.replicates) + ")");
    }

    const double alpha = 1.0 - options.level;
    std::vector<IntervalEstimate> estimates;
    estimates.reserve(k);
    for (std::size_t c = 0; c < k; ++c) {
        IntervalEstimate est;
        est.column = task.missing_indices[c];
        est.point = point.imputed.at(est.column);
        est.lower = percentile(draws[c], alpha / 2.0);
        est.upper = percentile(draws[c], 1.0 - alpha / 2.0);
        est.level = options.level;
        est.replicates_used = static_cast<int>(draws[c].size());
        est.skipped = skipped;
        est.method = options.method;
        est.seed = options.seed;
        estimates.push_back(est);
    }
    return estimates;
}

}  // namespace pcadist
