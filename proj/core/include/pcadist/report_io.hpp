#pragma once

#include "pcadist/dataio.hpp"
#include "pcadist/diagnostics.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace pcadist {

/// Influence scores as JSON; rows listed in descending relative influence.
nlohmann::json influence_to_json(const InfluenceReport& report);
/// CSV "row,absolute,relative", descending relative influence.
void write_influence_csv(const InfluenceReport& report, const std::string& path);

/// Row order of an influence report by descending relative influence
/// (ties: lower row index first).
std::vector<Eigen::Index> influence_ranking(const InfluenceReport& report);

nlohmann::json validation_to_json(const ValidationReport& report,
                                  const std::string& target_name);
/// CSV "row,actual,predicted,squared_error".
void write_validation_csv(const ValidationReport& report, const std::string& path);

nlohmann::json intervals_to_json(const std::vector<IntervalEstimate>& estimates,
                                 const std::vector<std::string>& column_names);

/// Sidecar imputation report: per-row distance, uniqueness and degeneracy
/// flags plus the imputed values by column name.
nlohmann::json imputation_report(const Dataset& dataset,
                                 const std::vector<RowPrediction>& results);

void write_json(const nlohmann::json& doc, const std::string& path);

}  // namespace pcadist
