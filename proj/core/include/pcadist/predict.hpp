#pragma once

#include "pcadist/pca.hpp"

#include <Eigen/Core>

#include <map>
#include <string>
#include <vector>

namespace pcadist {

/// Inner product used to measure the residual norm: the canonical Euclidean
/// one, or (x, y) = x^T M y for a symmetric positive-definite M given in
/// scaled coordinates.
class MetricSpec {
public:
    MetricSpec() = default;

    static MetricSpec euclidean() { return MetricSpec{}; }

    /// Validates symmetry (to 1e-9) and positive-definiteness (Cholesky).
    static MetricSpec general(Eigen::MatrixXd m);

    bool is_euclidean() const { return matrix_.size() == 0; }
    const Eigen::MatrixXd& matrix() const { return matrix_; }

private:
    Eigen::MatrixXd matrix_;  // empty for the Euclidean metric
};

/// One incomplete record: values for the known coordinates plus the ordered
/// list of missing coordinates. Known and missing sets must be disjoint and
/// together cover every coordinate; at least one of each is required.
struct PredictionTask {
    std::map<Eigen::Index, double> known_values;  // original data units
    std::vector<Eigen::Index> missing_indices;
    MetricSpec metric = MetricSpec::euclidean();
};

/// Incomplete record keyed by column name; resolved against a model's
/// column names before prediction.
struct NamedRecord {
    std::map<std::string, double> known_values;
    std::vector<std::string> missing_columns;
};

struct PredictionResult {
    std::map<Eigen::Index, double> imputed;  // missing index -> original units
    Eigen::VectorXd t_pred;                  // scaled units, task order
    double distance = 0.0;                   // scaled units
    bool unique = false;
    /// Distance does not depend on the free coordinates (w1 = 0 / W_k = 0);
    /// the column-mean convention was returned. Implies unique = false.
    bool distance_invariant = false;
};

enum class SpaceMethod {
    NormalSystem,  // Gram system A t = b, always applicable
    LeftInverse,   // QR least-squares route; requires full column rank
};

/// Single missing coordinate via the closed form
/// t = -(w1 . W'l') / ||w1||^2 in scaled, missing-first coordinates.
/// ||w1|| below the zero threshold returns the column-mean convention with
/// distance_invariant set. Euclidean metric only.
PredictionResult predict_line(const PrincipalModel& model, const PredictionTask& task);

/// Independent route for one missing coordinate: samples the squared
/// distance at t in {-1, 0, 1}, fits the quadratic through the three points
/// and returns its vertex. Exists to cross-validate predict_line; throws
/// "distance invariant along line" in the degenerate case.
PredictionResult predict_line_quadfit(const PrincipalModel& model, const PredictionTask& task);

/// Any number of missing coordinates (1 <= k <= m-1). Default path assembles
/// the k x k Gram system from residual columns and solves it (minimum-norm
/// on singular-but-consistent systems, unique=false). The left-inverse path
/// solves W_k t = -W'l' by QR and requires rank(W_k) = k. A general task
/// metric is honored by the weighted Gram system (NormalSystem only).
PredictionResult predict_space(const PrincipalModel& model, const PredictionTask& task,
                               SpaceMethod method = SpaceMethod::NormalSystem);

/// One missing coordinate under a general inner product:
/// t = -(w1^T M W'l') / ||w1||_M^2. With the identity metric this reduces
/// exactly to predict_line.
PredictionResult predict_line_metric(const PrincipalModel& model, const PredictionTask& task,
                                     const MetricSpec& metric);

/// Full record pipeline: validate, scale known values, permute missing
/// coordinates first, dispatch to the line or space predictor (honoring the
/// task metric), then invert the permutation and scaling.
PredictionResult impute_record(const PrincipalModel& model, const PredictionTask& task);
PredictionResult impute_record(const PrincipalModel& model, const NamedRecord& record);

/// Resolves a named record against the model's columns; unknown column
/// names are an error.
PredictionTask task_from_named(const PrincipalModel& model, const NamedRecord& record);

}  // namespace pcadist
