#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

namespace pcadist {

/// Dense matrix of complete samples: one row per sample, one column per
/// variable. Column names default to "c0", "c1", ... when not supplied.
struct DataMatrix {
    Eigen::MatrixXd values;
    std::vector<std::string> column_names;

    DataMatrix() = default;
    explicit DataMatrix(Eigen::MatrixXd vals, std::vector<std::string> names = {});

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }

    /// Copy with the given rows dropped. Indices refer to this matrix.
    DataMatrix without_rows(const std::vector<Eigen::Index>& drop) const;

    /// Copy with exactly the given rows, in the given order (repeats allowed).
    DataMatrix select_rows(const std::vector<Eigen::Index>& keep) const;

    /// Index of a named column, or -1 if absent.
    Eigen::Index column_index(const std::string& name) const;
};

std::vector<std::string> default_column_names(Eigen::Index count);

}  // namespace pcadist
