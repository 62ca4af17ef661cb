#pragma once

#include "pcadist/data_matrix.hpp"
#include "pcadist/linalg.hpp"
#include "pcadist/scaling.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace pcadist {

/// How many principal components to retain: an explicit count, or the
/// smallest count reaching a cumulative explained-variance fraction.
struct ComponentSelection {
    enum class Kind { Count, VarianceFraction };

    Kind kind = Kind::VarianceFraction;
    int count = 0;
    double fraction = 0.9;

    static ComponentSelection by_count(int n);
    static ComponentSelection by_variance(double fraction);
};

struct PcaOptions {
    ComponentSelection selection{};   // default: 90% cumulative variance
    bool standardize = true;
};

/// Fitted PCA model. Components are orthonormal, ordered by decreasing
/// explained variance, with each component's largest-magnitude entry
/// positive. In scaled coordinates the principal subspace passes through the
/// origin; centering absorbs the shift by the column means.
struct PrincipalModel {
    std::vector<std::string> column_names;
    ScalingParams scaling;
    Basis components;                   // dimension x n, orthonormal
    Eigen::VectorXd explained_variance; // scaled-data variance units, nonincreasing
    bool clamped = false;               // requested count exceeded numerical rank

    /// Fraction of total variance captured by the retained components.
    double explained_fraction = 1.0;

    Eigen::Index dimension() const { return components.dimension(); }
    Eigen::Index component_count() const { return components.count(); }
};

/// Scales the samples (per options), then takes the top right singular
/// vectors of the scaled matrix as components. A count exceeding the
/// numerical rank is clamped with the model's warning flag set, not an
/// error.
PrincipalModel fit_pca(const DataMatrix& samples, const PcaOptions& options = {});

}  // namespace pcadist
