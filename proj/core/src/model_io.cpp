#include "pcadist/model_io.hpp"

#include <Eigen/Core>

#include <fstream>
#include <stdexcept>
#include <vector>

namespace pcadist {

namespace {

constexpr const char* kFormat = "pcadist-model";
constexpr int kVersion = 1;

std::vector<double> to_vector(const Eigen::VectorXd& v) {
    return {v.data(), v.data() + v.size()};
}

Eigen::VectorXd from_vector(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

nlohmann::json model_to_json(const PrincipalModel& model) {
    nlohmann::json doc;
    doc["format"] = kFormat;
    doc["version"] = kVersion;
    doc["columns"] = model.column_names;
    doc["means"] = to_vector(model.scaling.means);
    doc["stds"] = to_vector(model.scaling.stds);
    std::vector<std::string> modes;
    modes.reserve(model.scaling.modes.size());
    for (ColumnMode mode : model.scaling.modes) {
        modes.push_back(mode == ColumnMode::Standardize ? "standardize" : "center");
    }
    doc["modes"] = modes;
    nlohmann::json components = nlohmann::json::array();
    for (Eigen::Index j = 0; j < model.components.count(); ++j) {
        components.push_back(to_vector(model.components.columns.col(j)));
    }
    doc["components"] = components;
    doc["explained_variance"] = to_vector(model.explained_variance);
    doc["explained_fraction"] = model.explained_fraction;
    doc["n"] = model.component_count();
    doc["clamped"] = model.clamped;
    return doc;
}

PrincipalModel model_from_json(const nlohmann::json& doc) {
    if (doc.value("format", "") != kFormat) {
        throw std::runtime_error("model file: unexpected format field");
    }
    PrincipalModel model;
    model.column_names = doc.at("columns").get<std::vector<std::string>>();
    model.scaling.means = from_vector(doc.at("means").get<std::vector<double>>());
    model.scaling.stds = from_vector(doc.at("stds").get<std::vector<double>>());
    for (const auto& mode : doc.at("modes")) {
        const std::string text = mode.get<std::string>();
        if (text == "standardize") {
            model.scaling.modes.push_back(ColumnMode::Standardize);
        } else if (text == "center") {
            model.scaling.modes.push_back(ColumnMode::CenterOnly);
        } else {
            throw std::runtime_error("model file: unknown scaling mode \"" + text + "\"");
        }
    }
    const auto& components = doc.at("components");
    if (components.empty()) {
        throw std::runtime_error("model file: no components");
    }
    const auto m = static_cast<Eigen::Index>(model.scaling.means.size());
    Eigen::MatrixXd cols(m, static_cast<Eigen::Index>(components.size()));
    for (std::size_t j = 0; j < components.size(); ++j) {
        const auto vec = components[j].get<std::vector<double>>();
        if (static_cast<Eigen::Index>(vec.size()) != m) {
            throw std::runtime_error("model file: component dimension mismatch");
        }
        cols.col(static_cast<Eigen::Index>(j)) = from_vector(vec);
    }
    model.components = Basis(std::move(cols), true);
    model.explained_variance =
        from_vector(doc.at("explained_variance").get<std::vector<double>>());
    model.explained_fraction = doc.value("explained_fraction", 1.0);
    model.clamped = doc.value("clamped", false);
    if (model.explained_variance.size() != model.component_count()) {
        throw std::runtime_error("model file: explained_variance length mismatch");
    }
    return model;
}

void save_model(const PrincipalModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write \"" + path + "\"");
    }
    out << model_to_json(model).dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("failed writing \"" + path + "\"");
    }
}

PrincipalModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open \"" + path + "\"");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("\"" + path + "\": " + e.what());
    }
    return model_from_json(doc);
}

}  // namespace pcadist
