#include "pcadist/report_io.hpp"

#include "pcadist/dataio.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace pcadist {

namespace {

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write \"" + path + "\"");
    }
    return out;
}

}  // namespace

std::vector<Eigen::Index> influence_ranking(const InfluenceReport& report) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(report.relative.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return report.relative(a) > report.relative(b);
    });
    return order;
}

nlohmann::json influence_to_json(const InfluenceReport& report) {
    nlohmann::json doc;
    doc["baseline"] = report.baseline;
    doc["baseline_degenerate"] = report.baseline_degenerate;
    nlohmann::json scores = nlohmann::json::array();
    for (Eigen::Index i : influence_ranking(report)) {
        scores.push_back({{"row", i},
                          {"absolute", report.absolute(i)},
                          {"relative", report.relative(i)}});
    }
    doc["scores"] = scores;
    return doc;
}

void write_influence_csv(const InfluenceReport& report, const std::string& path) {
    std::ofstream out = open_for_write(path);
    out << "row,absolute,relative\n";
    for (Eigen::Index i : influence_ranking(report)) {
        out << i << ',' << format_number(report.absolute(i)) << ','
            << format_number(report.relative(i)) << '\n';
    }
}

nlohmann::json validation_to_json(const ValidationReport& report,
                                  const std::string& target_name) {
    nlohmann::json doc;
    doc["target"] = target_name;
    doc["target_column"] = report.target_column;
    doc["mse"] = report.mse;
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < report.actual.size(); ++i) {
        rows.push_back({{"row", i},
                        {"actual", report.actual(i)},
                        {"predicted", report.predicted(i)},
                        {"squared_error", report.squared_errors(i)}});
    }
    doc["rows"] = rows;
    return doc;
}

void write_validation_csv(const ValidationReport& report, const std::string& path) {
    std::ofstream out = open_for_write(path);
    out << "row,actual,predicted,squared_error\n";
    for (Eigen::Index i = 0; i < report.actual.size(); ++i) {
        out << i << ',' << format_number(report.actual(i)) << ','
            << format_number(report.predicted(i)) << ','
            << format_number(report.squared_errors(i)) << '\n';
    }
}

nlohmann::json intervals_to_json(const std::vector<IntervalEstimate>& estimates,
                                 const std::vector<std::string>& column_names) {
    nlohmann::json doc;
    if (!estimates.empty()) {
        const IntervalEstimate& first = estimates.front();
        doc["method"] = first.method == ResampleMethod::Bootstrap ? "bootstrap" : "jackknife";
        doc["level"] = first.level;
        doc["seed"] = first.seed;
        doc["replicates_used"] = first.replicates_used;
        doc["skipped"] = first.skipped;
    }
    nlohmann::json list = nlohmann::json::array();
    for (const IntervalEstimate& est : estimates) {
        nlohmann::json entry;
        entry["column"] = est.column;
        if (est.column >= 0 && static_cast<std::size_t>(est.column) < column_names.size()) {
            entry["name"] = column_names[static_cast<std::size_t>(est.column)];
        }
        entry["point"] = est.point;
        entry["lower"] = est.lower;
        entry["upper"] = est.upper;
        list.push_back(entry);
    }
    doc["estimates"] = list;
    return doc;
}

nlohmann::json imputation_report(const Dataset& dataset,
                                 const std::vector<RowPrediction>& results) {
    nlohmann::json rows = nlohmann::json::array();
    for (const RowPrediction& rp : results) {
        nlohmann::json imputed;
        for (const auto& [column, value] : rp.result.imputed) {
            imputed[dataset.column_names[static_cast<std::size_t>(column)]] = value;
        }
        rows.push_back({{"row", rp.row},
                        {"distance", rp.result.distance},
                        {"unique", rp.result.unique},
                        {"distance_invariant", rp.result.distance_invariant},
                        {"imputed", imputed}});
    }
    nlohmann::json doc;
    doc["format"] = "pcadist-imputation-report";
    doc["rows"] = rows;
    return doc;
}

void write_json(const nlohmann::json& doc, const std::string& path) {
    std::ofstream out = open_for_write(path);
    out << doc.dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("failed writing \"" + path + "\"");
    }
}

}  // namespace pcadist
