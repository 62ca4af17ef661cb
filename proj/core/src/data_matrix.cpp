#include "pcadist/data_matrix.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace pcadist {

std::vector<std::string> default_column_names(Eigen::Index count) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(count));
    for (Eigen::Index j = 0; j < count; ++j) {
        names.push_back("c" + std::to_string(j));
    }
    return names;
}

DataMatrix::DataMatrix(Eigen::MatrixXd vals, std::vector<std::string> names)
    : values(std::move(vals)), column_names(std::move(names)) {
    if (column_names.empty()) {
        column_names = default_column_names(values.cols());
    }
    if (static_cast<Eigen::Index>(column_names.size()) != values.cols()) {
        throw std::invalid_argument("DataMatrix: " + std::to_string(column_names.size()) +
                                    " column names for " + std::to_string(values.cols()) +
                                    " columns");
    }
}

DataMatrix DataMatrix::without_rows(const std::vector<Eigen::Index>& drop) const {
    std::vector<bool> dropped(static_cast<std::size_t>(rows()), false);
    for (Eigen::Index i : drop) {
        if (i < 0 || i >= rows()) {
            throw std::out_of_range("DataMatrix::without_rows: row " + std::to_string(i) +
                                    " out of range");
        }
        dropped[static_cast<std::size_t>(i)] = true;
    }
    std::vector<Eigen::Index> keep;
    keep.reserve(static_cast<std::size_t>(rows()));
    for (Eigen::Index i = 0; i < rows(); ++i) {
        if (!dropped[static_cast<std::size_t>(i)]) keep.push_back(i);
    }
    return select_rows(keep);
}

DataMatrix DataMatrix::select_rows(const std::vector<Eigen::Index>& keep) const {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(keep.size()), cols());
    for (std::size_t r = 0; r < keep.size(); ++r) {
        if (keep[r] < 0 || keep[r] >= rows()) {
            throw std::out_of_range("DataMatrix::select_rows: row " + std::to_string(keep[r]) +
                                    " out of range");
        }
        out.row(static_cast<Eigen::Index>(r)) = values.row(keep[r]);
    }
    return DataMatrix(std::move(out), column_names);
}

Eigen::Index DataMatrix::column_index(const std::string& name) const {
    for (std::size_t j = 0; j < column_names.size(); ++j) {
        if (column_names[j] == name) return static_cast<Eigen::Index>(j);
    }
    return -1;
}

}  // namespace pcadist
