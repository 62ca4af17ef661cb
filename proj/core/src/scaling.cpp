#include "pcadist/scaling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pcadist {

namespace {
constexpr double kZeroStd = 1e-12;

void check_column(const ScalingParams& p, Eigen::Index column) {
    if (column < 0 || column >= p.dimension()) {
        throw std::out_of_range("ScalingParams: column " + std::to_string(column) +
                                " out of range");
    }
}
}  // namespace

double ScalingParams::scale_value(Eigen::Index column, double value) const {
    check_column(*this, column);
    const double centered = value - means(column);
    return modes[static_cast<std::size_t>(column)] == ColumnMode::Standardize
               ? centered / stds(column)
               : centered;
}

double ScalingParams::unscale_value(Eigen::Index column, double value) const {
    check_column(*this, column);
    const double spread = modes[static_cast<std::size_t>(column)] == ColumnMode::Standardize
                              ? value * stds(column)
                              : value;
    return spread + means(column);
}

Eigen::MatrixXd ScalingParams::apply(const Eigen::MatrixXd& raw) const {
    if (raw.cols() != dimension()) {
        throw std::invalid_argument("ScalingParams::apply: column count mismatch");
    }
    Eigen::MatrixXd scaled = raw;
    for (Eigen::Index j = 0; j < dimension(); ++j) {
        scaled.col(j).array() -= means(j);
        if (modes[static_cast<std::size_t>(j)] == ColumnMode::Standardize) {
            scaled.col(j) /= stds(j);
        }
    }
    return scaled;
}

Eigen::MatrixXd ScalingParams::invert(const Eigen::MatrixXd& scaled) const {
    if (scaled.cols() != dimension()) {
        throw std::invalid_argument("ScalingParams::invert: column count mismatch");
    }
    Eigen::MatrixXd raw = scaled;
    for (Eigen::Index j = 0; j < dimension(); ++j) {
        if (modes[static_cast<std::size_t>(j)] == ColumnMode::Standardize) {
            raw.col(j) *= stds(j);
        }
        raw.col(j).array() += means(j);
    }
    return raw;
}

double ScalingParams::direction_scale(Eigen::Index column) const {
    check_column(*this, column);
    return modes[static_cast<std::size_t>(column)] == ColumnMode::Standardize ? stds(column) : 1.0;
}

ScalingParams fit_scaling(const DataMatrix& samples, bool standardize) {
    const Eigen::Index s = samples.rows();
    const Eigen::Index m = samples.cols();
    if (s < 2) {
        throw std::invalid_argument("fit_scaling: need at least 2 rows, got " + std::to_string(s));
    }
    ScalingParams params;
    params.means = samples.values.colwise().mean();
    params.stds.resize(m);
    params.modes.resize(static_cast<std::size_t>(m));
    for (Eigen::Index j = 0; j < m; ++j) {
        const double ss = (samples.values.col(j).array() - params.means(j)).square().sum();
        params.stds(j) = std::sqrt(ss / static_cast<double>(s - 1));
        params.modes[static_cast<std::size_t>(j)] =
            (standardize && params.stds(j) >= kZeroStd) ? ColumnMode::Standardize
                                                        : ColumnMode::CenterOnly;
    }
    return params;
}

}  // namespace pcadist
