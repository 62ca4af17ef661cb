#include "pcadist/dataio.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "pcadist/report_io.hpp"

namespace pcadist {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

/// Splits text into records of fields, honoring quoted fields with ""
/// escapes and quoted newlines. A trailing newline does not produce an
/// empty final record.
std::vector<std::vector<std::string>> split_records(const std::string& text, char delimiter) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    const auto end_field = [&] {
        fields.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    const auto end_record = [&] {
        end_field();
        records.push_back(std::move(fields));
        fields.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == delimiter) {
            end_field();
        } else if (c == '\n') {
            if (!field.empty() || !fields.empty() || field_started) {
                end_record();
            }
        } else if (c == '\r') {
            // consumed as part of CRLF
        } else {
            field += c;
            field_started = true;
        }
    }
    if (in_quotes) {
        throw std::runtime_error("CSV: unterminated quoted field");
    }
    if (!field.empty() || !fields.empty() || field_started) {
        end_record();
    }
    return records;
}

bool is_missing(const std::string& cell, const std::vector<std::string>& markers) {
    const std::string trimmed = trim(cell);
    return std::find(markers.begin(), markers.end(), trimmed) != markers.end();
}

bool parse_double(const std::string& cell, double& out) {
    const std::string trimmed = trim(cell);
    if (trimmed.empty()) return false;
    const char* first = trimmed.data();
    const char* last = trimmed.data() + trimmed.size();
    if (*first == '+') ++first;  // from_chars rejects a leading plus
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

bool needs_quoting(const std::string& field, char delimiter) {
    return field.find(delimiter) != std::string::npos ||
           field.find('"') != std::string::npos || field.find('\n') != std::string::npos;
}

std::string quoted(const std::string& field) {
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string format_number(double value) {
    char buffer[40];
    const auto [ptr, ec] =
        std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 12);
    if (ec != std::errc()) {
        throw std::runtime_error("format_number: conversion failed");
    }
    std::string s(buffer, ptr);
    // Trim trailing zeros of the fractional part ("1.250000" -> "1.25").
    const auto epos = s.find_first_of("eE");
    std::string mantissa = epos == std::string::npos ? s : s.substr(0, epos);
    const std::string exponent = epos == std::string::npos ? "" : s.substr(epos);
    if (mantissa.find('.') != std::string::npos) {
        std::size_t last = mantissa.find_last_not_of('0');
        if (mantissa[last] == '.') --last;
        mantissa.erase(last + 1);
    }
    return mantissa + exponent;
}

bool Dataset::row_complete(Eigen::Index row) const {
    const auto& mask = missing[static_cast<std::size_t>(row)];
    return std::none_of(mask.begin(), mask.end(), [](bool b) { return b; });
}

std::vector<Eigen::Index> Dataset::complete_row_indices() const {
    std::vector<Eigen::Index> indices;
    for (Eigen::Index i = 0; i < rows(); ++i) {
        if (row_complete(i)) indices.push_back(i);
    }
    return indices;
}

std::vector<Eigen::Index> Dataset::incomplete_row_indices() const {
    std::vector<Eigen::Index> indices;
    for (Eigen::Index i = 0; i < rows(); ++i) {
        if (!row_complete(i)) indices.push_back(i);
    }
    return indices;
}

DataMatrix Dataset::complete_matrix() const {
    const std::vector<Eigen::Index> keep = complete_row_indices();
    if (keep.empty()) {
        throw std::runtime_error("dataset has no complete rows to fit on");
    }
    Eigen::MatrixXd out(static_cast<Eigen::Index>(keep.size()), cols());
    for (std::size_t r = 0; r < keep.size(); ++r) {
        out.row(static_cast<Eigen::Index>(r)) = values.row(keep[r]);
    }
    return DataMatrix(std::move(out), column_names);
}

PredictionTask Dataset::task_for_row(Eigen::Index row) const {
    if (row < 0 || row >= rows()) {
        throw std::out_of_range("task_for_row: row " + std::to_string(row) + " out of range");
    }
    PredictionTask task;
    const auto& mask = missing[static_cast<std::size_t>(row)];
    for (Eigen::Index j = 0; j < cols(); ++j) {
        if (mask[static_cast<std::size_t>(j)]) {
            task.missing_indices.push_back(j);
        } else {
            task.known_values[j] = values(row, j);
        }
    }
    if (task.missing_indices.empty()) {
        throw std::invalid_argument("task_for_row: row " + std::to_string(row) +
                                    " has no missing cells");
    }
    return task;
}

Dataset load_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open \"" + path + "\"");
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    const std::vector<std::vector<std::string>> records =
        split_records(buffer.str(), options.delimiter);

    if (records.empty()) {
        throw std::runtime_error("\"" + path + "\": file is empty");
    }

    Dataset dataset;
    dataset.options = options;
    std::size_t first_data = 0;
    if (options.header) {
        for (const std::string& name : records[0]) {
            dataset.column_names.push_back(trim(name));
        }
        first_data = 1;
    } else {
        dataset.column_names = default_column_names(static_cast<Eigen::Index>(records[0].size()));
    }
    const std::size_t m = dataset.column_names.size();
    const std::size_t n_rows = records.size() - first_data;
    if (n_rows == 0) {
        throw std::runtime_error("\"" + path + "\": no data rows");
    }

    dataset.values.resize(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(m));
    dataset.missing.assign(n_rows, std::vector<bool>(m, false));

    for (std::size_t r = 0; r < n_rows; ++r) {
        const std::vector<std::string>& record = records[r + first_data];
        const std::string where = "\"" + path + "\" row " + std::to_string(r + 1);
        if (record.size() != m) {
            throw std::runtime_error(where + " has " + std::to_string(record.size()) +
                                     " fields, expected " + std::to_string(m));
        }
        bool any_known = false;
        for (std::size_t c = 0; c < m; ++c) {
            if (is_missing(record[c], options.missing_markers)) {
                dataset.missing[r][c] = true;
                dataset.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            double value = 0.0;
            if (!parse_double(record[c], value) || !std::isfinite(value)) {
                throw std::runtime_error(where + ", column \"" + dataset.column_names[c] +
                                         "\": cell \"" + trim(record[c]) +
                                         "\" is not a finite number");
            }
            dataset.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = value;
            any_known = true;
        }
        if (!any_known) {
            throw std::runtime_error(where + " has no known values");
        }
    }

    if (dataset.complete_row_indices().empty()) {
        throw std::runtime_error("\"" + path + "\": no complete rows to fit on");
    }
    return dataset;
}

void write_imputed(const Dataset& dataset, const std::vector<RowPrediction>& results,
                   const std::string& csv_path, const std::string& report_path) {
    std::vector<const PredictionResult*> by_row(static_cast<std::size_t>(dataset.rows()), nullptr);
    for (const RowPrediction& rp : results) {
        if (rp.row < 0 || rp.row >= dataset.rows()) {
            throw std::out_of_range("write_imputed: result row " + std::to_string(rp.row) +
                                    " out of range");
        }
        by_row[static_cast<std::size_t>(rp.row)] = &rp.result;
    }
    for (Eigen::Index i = 0; i < dataset.rows(); ++i) {
        if (!dataset.row_complete(i) && by_row[static_cast<std::size_t>(i)] == nullptr) {
            throw std::invalid_argument("write_imputed: incomplete row " + std::to_string(i) +
                                        " has no prediction");
        }
    }

    std::ofstream out(csv_path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write \"" + csv_path + "\"");
    }
    const char delim = dataset.options.delimiter;
    if (dataset.options.header) {
        for (std::size_t c = 0; c < dataset.column_names.size(); ++c) {
            if (c) out << delim;
            const std::string& name = dataset.column_names[c];
            out << (needs_quoting(name, delim) ? quoted(name) : name);
        }
        out << '\n';
    }
    for (Eigen::Index i = 0; i < dataset.rows(); ++i) {
        const PredictionResult* result = by_row[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < dataset.cols(); ++j) {
            if (j) out << delim;
            double value = dataset.values(i, j);
            if (dataset.missing[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                value = result->imputed.at(j);
            }
            out << format_number(value);
        }
        out << '\n';
    }
    out.close();
    if (!out) {
        throw std::runtime_error("failed writing \"" + csv_path + "\"");
    }

    if (!report_path.empty()) {
        write_json(imputation_report(dataset, results), report_path);
    }
}

}  // namespace pcadist
