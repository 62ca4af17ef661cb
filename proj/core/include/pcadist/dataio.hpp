#pragma once

#include "pcadist/data_matrix.hpp"
#include "pcadist/predict.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace pcadist {

struct CsvOptions {
    std::vector<std::string> missing_markers{"", "NA", "NaN"};
    bool header = true;
    char delimiter = ',';
};

/// Parsed CSV: every row in file order, with missing cells masked (stored as
/// NaN). Complete rows form the model-fitting matrix; incomplete rows become
/// prediction tasks.
struct Dataset {
    std::vector<std::string> column_names;
    Eigen::MatrixXd values;
    std::vector<std::vector<bool>> missing;
    CsvOptions options;

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }

    bool row_complete(Eigen::Index row) const;
    std::vector<Eigen::Index> complete_row_indices() const;
    std::vector<Eigen::Index> incomplete_row_indices() const;

    /// Submatrix of complete rows; throws if there are none.
    DataMatrix complete_matrix() const;

    /// Prediction task for an incomplete row (Euclidean metric).
    PredictionTask task_for_row(Eigen::Index row) const;
};

/// RFC-4180-style CSV reader. Cells matching a missing marker (after
/// whitespace trim) are masked; every other cell must parse as a finite
/// number. Ragged rows, fully-missing rows and files without a single
/// complete row are errors that name the offending location.
Dataset load_csv(const std::string& path, const CsvOptions& options = {});

struct RowPrediction {
    Eigen::Index row = 0;  // dataset row index
    PredictionResult result;
};

/// Writes the dataset with imputed cells filled, preserving row and column
/// order, plus a sidecar JSON report (per-row distance, uniqueness and
/// degeneracy flags). Every incomplete row must have a result.
void write_imputed(const Dataset& dataset, const std::vector<RowPrediction>& results,
                   const std::string& csv_path, const std::string& report_path);

/// Shortest decimal form that round-trips to 12 significant digits.
std::string format_number(double value);

}  // namespace pcadist
