#pragma once

#include "pcadist/pca.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace pcadist {

nlohmann::json model_to_json(const PrincipalModel& model);
PrincipalModel model_from_json(const nlohmann::json& doc);

void save_model(const PrincipalModel& model, const std::string& path);
PrincipalModel load_model(const std::string& path);

}  // namespace pcadist
