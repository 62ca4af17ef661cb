#pragma once

#include "pcadist/data_matrix.hpp"
#include "pcadist/predict.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace pcadist {

/// Per-row influence of removal on the fitted principal subspace, the PCA
/// analogue of Cook's distance. Frobenius norms in scaled units.
struct InfluenceReport {
    Eigen::VectorXd absolute;  // C_i = ||(H - H_i) S^T||_F
    Eigen::VectorXd relative;  // RC_i = C_i / baseline
    double baseline = 0.0;     // ||(H - E) S^T||_F
    /// Data lies exactly on the principal subspace; relative scores are
    /// reported as 0.
    bool baseline_degenerate = false;
};

/// Refits scaling + PCA with each row left out and measures the change of
/// the projected data. Fold subspaces are mapped back to the full-data
/// scaled frame so projectors are compared in one coordinate system.
InfluenceReport influence_scores(const DataMatrix& samples, int n_components,
                                 bool standardize = true);

struct OutlierRemoval {
    DataMatrix data;
    std::vector<Eigen::Index> removed;  // original row indices, removal order
};

/// Drops the ceil(fraction * s) rows of largest relative influence, either
/// from one scoring pass or iteratively (rescore after each removal).
OutlierRemoval remove_outliers(const DataMatrix& samples, int n_components, double fraction,
                               bool iterative = false, bool standardize = true);

struct ValidationReport {
    Eigen::Index target_column = 0;
    Eigen::VectorXd actual;          // original units
    Eigen::VectorXd predicted;       // original units
    Eigen::VectorXd squared_errors;
    double mse = 0.0;
};

/// Leave-one-out cross-validation of the target column: each row is
/// predicted from its other coordinates by a model fitted without it.
ValidationReport loo_cv(const DataMatrix& samples, int n_components, Eigen::Index target_column,
                        bool standardize = true);

enum class ResampleMethod { Jackknife, Bootstrap };

struct ResampleOptions {
    ResampleMethod method = ResampleMethod::Bootstrap;
    int replicates = 500;
    double level = 0.9;
    std::uint64_t seed = 0;
    int leave_out = 1;  // p, jackknife only
    bool standardize = true;
};

/// Empirical percentile interval of one missing coordinate's predictions
/// across resampled model fits.
struct IntervalEstimate {
    Eigen::Index column = 0;
    double point = 0.0;  // full-data prediction
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.9;
    int replicates_used = 0;
    int skipped = 0;  // replicates whose fit had rank < n
    ResampleMethod method = ResampleMethod::Bootstrap;
    std::uint64_t seed = 0;
};

/// Refits scaling + PCA on resampled data (random leave-p-out subsets, or
/// bootstrap resamples of size s with replacement), predicts the task on
/// each, and returns one percentile interval per missing coordinate.
/// Deterministic given the seed. Replicates whose fit cannot supply n
/// components are skipped; more than half skipped is an error.
std::vector<IntervalEstimate> resample_ci(const DataMatrix& samples, int n_components,
                                          const PredictionTask& task,
                                          const ResampleOptions& options);

}  // namespace pcadist
