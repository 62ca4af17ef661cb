#pragma once

#include "pcadist/data_matrix.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace pcadist {

enum class ColumnMode : std::uint8_t {
    Standardize,  // (x - mean) / std
    CenterOnly,   // x - mean
};

/// Per-column affine transform fitted on the complete samples. Columns whose
/// standard deviation is below 1e-12 are centered only.
struct ScalingParams {
    Eigen::VectorXd means;
    Eigen::VectorXd stds;
    std::vector<ColumnMode> modes;

    Eigen::Index dimension() const { return means.size(); }

    double scale_value(Eigen::Index column, double value) const;
    double unscale_value(Eigen::Index column, double value) const;

    Eigen::MatrixXd apply(const Eigen::MatrixXd& raw) const;
    Eigen::MatrixXd invert(const Eigen::MatrixXd& scaled) const;

    /// Multiplier taking a direction component from scaled to original units
    /// (the std for standardized columns, 1 otherwise). Shifts cancel on
    /// directions.
    double direction_scale(Eigen::Index column) const;
};

/// Column means and sample standard deviations (divisor s-1). With
/// standardize=false every column is centered only; stds are still recorded.
ScalingParams fit_scaling(const DataMatrix& samples, bool standardize = true);

}  // namespace pcadist
