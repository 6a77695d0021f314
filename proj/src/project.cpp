#include "simo/project.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include "simo/error.hpp"

namespace simo {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
    fail(ErrorKind::configuration, where + ": " + what);
}

void reject_unknown(const YAML::Node& node, const std::string& where, std::set<std::string> allowed) {
    if (!node.IsMap()) config_error(where, "expected a mapping");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key)) config_error(where, "unknown key '" + key + "'");
    }
}

double as_double(const YAML::Node& node, const std::string& where) {
    try {
        return node.as<double>();
    } catch (const YAML::Exception&) {
        config_error(where, "expected a number");
    }
}

VectorXd as_vector(const YAML::Node& node, const std::string& where) {
    if (!node.IsSequence()) config_error(where, "expected a list of numbers");
    VectorXd v(static_cast<Eigen::Index>(node.size()));
    for (std::size_t i = 0; i < node.size(); ++i) v[static_cast<Eigen::Index>(i)] = as_double(node[i], where);
    return v;
}

MatrixXd as_matrix(const YAML::Node& node, const std::string& where) {
    if (!node.IsSequence() || node.size() == 0) config_error(where, "expected a list of rows");
    const auto rows = static_cast<Eigen::Index>(node.size());
    const auto cols = static_cast<Eigen::Index>(node[0].size());
    MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const VectorXd row = as_vector(node[static_cast<std::size_t>(i)], where);
        if (row.size() != cols) config_error(where, "rows have different lengths");
        m.row(i) = row.transpose();
    }
    return m;
}

Saturation as_saturation(const YAML::Node& node, const std::string& where) {
    const VectorXd v = as_vector(node, where);
    if (v.size() != 2) config_error(where, "expected [lower, upper]");
    Saturation s{v[0], v[1]};
    s.validate();
    return s;
}

void parse_robot_params(const YAML::Node& node, robot::RobotParams& p) {
    const std::string where = "plant.params";
    reject_unknown(node, where, {"I_n", "I_k", "m_n", "m_k", "l", "R", "r", "k", "k_e", "k_m", "g"});
    auto set = [&](const char* key, double& field) {
        if (node[key]) field = as_double(node[key], where + "." + key);
    };
    set("I_n", p.I_n);
    set("I_k", p.I_k);
    set("m_n", p.m_n);
    set("m_k", p.m_k);
    set("l", p.l);
    set("R", p.R);
    set("r", p.r);
    set("k", p.k);
    set("k_e", p.k_e);
    set("k_m", p.k_m);
    set("g", p.g);
}

YAML::Node load_yaml_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::io, "cannot open '" + path.string() + "'");
    try {
        return YAML::Load(in);
    } catch (const YAML::Exception& e) {
        config_error(path.string(), std::string("YAML syntax error: ") + e.what());
    }
}

PlantConfig parse_plant(const YAML::Node& node, const fs::path& base_dir, int depth = 0) {
    const std::string where = "plant";
    if (node["file"]) {
        reject_unknown(node, where, {"file"});
        if (depth > 4) config_error(where, "plant files nest too deeply");
        const fs::path file = base_dir / node["file"].as<std::string>();
        YAML::Node doc = load_yaml_file(file);
        return parse_plant(doc["plant"] ? doc["plant"] : doc, file.parent_path(), depth + 1);
    }
    reject_unknown(node, where, {"type", "angle_unit", "params", "q", "mechanical", "A", "B", "name"});

    PlantConfig plant;
    const std::string type = node["type"] ? node["type"].as<std::string>() : "balancing-robot";
    if (type == "balancing-robot") {
        plant.type = PlantType::balancing_robot;
        if (node["angle_unit"]) {
            const auto unit = node["angle_unit"].as<std::string>();
            if (unit == "degrees") plant.robot.angle_unit = robot::AngleUnit::degrees;
            else if (unit == "radians") plant.robot.angle_unit = robot::AngleUnit::radians;
            else config_error(where + ".angle_unit", "expected 'degrees' or 'radians'");
        }
        if (node["params"]) parse_robot_params(node["params"], plant.robot);
        if (node["A"] || node["B"] || node["q"]) config_error(where, "A, B and q apply to linear plants only");
        plant.robot.validate();
    } else if (type == "linear") {
        plant.type = PlantType::linear;
        if (!node["A"] || !node["B"]) config_error(where, "linear plant needs A and B");
        plant.A = as_matrix(node["A"], where + ".A");
        plant.B = as_vector(node["B"], where + ".B");
        plant.q = node["q"] ? node["q"].as<int>() : static_cast<int>(plant.A.rows() / 2);
        plant.mechanical = node["mechanical"] ? node["mechanical"].as<bool>() : true;
        if (plant.A.rows() != 2 * plant.q) config_error(where, "A must be 2q x 2q");
    } else {
        config_error(where + ".type", "unknown plant type '" + type + "'");
    }
    return plant;
}

struct ScenarioDefaults {
    std::optional<double> duration, step, sample_time, filter_n;
    std::optional<Saturation> saturation;
};

ScenarioDefaults parse_defaults(const YAML::Node& node) {
    const std::string where = "defaults";
    reject_unknown(node, where, {"duration", "dt", "ts", "filter_n", "saturation"});
    ScenarioDefaults d;
    if (node["duration"]) d.duration = as_double(node["duration"], where + ".duration");
    if (node["dt"]) d.step = as_double(node["dt"], where + ".dt");
    if (node["ts"]) d.sample_time = as_double(node["ts"], where + ".ts");
    if (node["filter_n"]) d.filter_n = as_double(node["filter_n"], where + ".filter_n");
    if (node["saturation"]) d.saturation = as_saturation(node["saturation"], where + ".saturation");
    return d;
}

void apply_defaults(ScenarioConfig& s, const ScenarioDefaults& d) {
    if (d.duration) s.duration = *d.duration;
    if (d.step) s.step = *d.step;
    if (d.sample_time) s.sample_time = *d.sample_time;
    if (d.filter_n) s.filter_n = *d.filter_n;
    if (d.saturation) s.saturation = *d.saturation;
}

ScenarioConfig parse_scenario(const YAML::Node& node, std::size_t index, const ScenarioDefaults& defaults,
                              const AffineSystem& plant) {
    const std::string where = "scenarios[" + std::to_string(index) + "]";
    reject_unknown(node, where,
                   {"name", "controller", "x0", "duration", "dt", "ts", "filter_n", "saturate", "saturation",
                    "reference"});
    ScenarioConfig s;
    apply_defaults(s, defaults);
    if (!node["controller"]) config_error(where, "missing 'controller'");
    const auto kind = parse_controller_kind(node["controller"].as<std::string>());
    if (!kind) config_error(where + ".controller", "unknown controller '" + node["controller"].as<std::string>() + "'");
    s.controller = *kind;
    s.name = node["name"] ? node["name"].as<std::string>() : std::string(to_string(s.controller));
    if (node["x0"]) {
        s.initial_state = as_vector(node["x0"], where + ".x0");
    } else {
        s.initial_state = default_scenarios(plant).front().initial_state;
    }
    if (node["duration"]) s.duration = as_double(node["duration"], where + ".duration");
    if (node["dt"]) s.step = as_double(node["dt"], where + ".dt");
    if (node["ts"]) s.sample_time = as_double(node["ts"], where + ".ts");
    if (node["filter_n"]) s.filter_n = as_double(node["filter_n"], where + ".filter_n");
    if (node["saturate"]) s.saturate = node["saturate"].as<bool>();
    if (node["saturation"]) s.saturation = as_saturation(node["saturation"], where + ".saturation");
    if (node["reference"]) s.reference = as_vector(node["reference"], where + ".reference");
    return s;
}

json to_json(const MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

VectorXd vector_from_json(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array()) fail(ErrorKind::configuration, std::string("model JSON lacks '") + key + "'");
    const auto& arr = j[key];
    VectorXd v(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
    return v;
}

MatrixXd matrix_from_json(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array() || j[key].empty())
        fail(ErrorKind::configuration, std::string("model JSON lacks '") + key + "'");
    const auto& rows = j[key];
    MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != static_cast<std::size_t>(m.cols()))
            fail(ErrorKind::configuration, std::string("ragged matrix '") + key + "'");
        for (std::size_t c = 0; c < rows[i].size(); ++c)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c].get<double>();
    }
    return m;
}

}  // namespace

AffineSystem build_plant(const PlantConfig& plant) {
    switch (plant.type) {
        case PlantType::balancing_robot:
            return robot::make_robot_system(plant.robot);
        case PlantType::linear:
            return make_linear_system(plant.A, plant.B, plant.q, plant.mechanical);
    }
    fail(ErrorKind::configuration, "unknown plant type");
}

std::vector<ScenarioConfig> default_scenarios(const AffineSystem& plant) {
    VectorXd x0 = VectorXd::Zero(plant.state_dim());
    x0[0] = plant.name() == "balancing-robot" ? 10.0 : 1.0;
    std::vector<ScenarioConfig> out;
    for (const auto kind : {ControllerKind::sfr_continuous, ControllerKind::pd_continuous,
                            ControllerKind::sfr_discrete, ControllerKind::pd_discrete}) {
        // PD needs the [0 | I] structure
        const bool pd = kind == ControllerKind::pd_continuous || kind == ControllerKind::pd_discrete;
        if (pd && !plant.mechanical()) continue;
        ScenarioConfig s;
        s.name = std::string(to_string(kind));
        s.controller = kind;
        s.initial_state = x0;
        out.push_back(std::move(s));
    }
    return out;
}

ProjectConfig default_project() {
    ProjectConfig cfg;
    const AffineSystem plant = build_plant(cfg.plant);
    cfg.weights = LqrWeights::defaults(plant.state_dim());
    cfg.scenarios = default_scenarios(plant);
    return cfg;
}

ProjectConfig parse_project(const std::string& yaml_text, const std::string& base_dir) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        config_error("config", std::string("YAML syntax error: ") + e.what());
    }
    if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
    reject_unknown(root, "config", {"plant", "linearization", "lqr", "defaults", "scenarios", "output_dir"});

    ProjectConfig cfg;
    try {
        if (root["plant"]) cfg.plant = parse_plant(root["plant"], base_dir);
        const AffineSystem plant = build_plant(cfg.plant);
        const int n = plant.state_dim();

        if (const auto lin = root["linearization"]) {
            reject_unknown(lin, "linearization", {"equilibrium", "epsilon"});
            if (lin["equilibrium"]) cfg.equilibrium = as_vector(lin["equilibrium"], "linearization.equilibrium");
            if (lin["epsilon"]) {
                cfg.epsilon = lin["epsilon"].IsScalar()
                                  ? VectorXd::Constant(n, as_double(lin["epsilon"], "linearization.epsilon"))
                                  : as_vector(lin["epsilon"], "linearization.epsilon");
            }
            if (cfg.equilibrium && cfg.equilibrium->size() != n)
                config_error("linearization.equilibrium", "needs " + std::to_string(n) + " components");
            if (cfg.epsilon && cfg.epsilon->size() != n)
                config_error("linearization.epsilon", "needs " + std::to_string(n) + " components");
        }

        cfg.weights = LqrWeights::defaults(n);
        if (const auto lqr = root["lqr"]) {
            reject_unknown(lqr, "lqr", {"Q", "R"});
            if (lqr["Q"]) {
                cfg.weights.q_diag = as_vector(lqr["Q"], "lqr.Q");
                cfg.weights_defaulted = false;
            }
            if (lqr["R"]) {
                cfg.weights.r = as_double(lqr["R"], "lqr.R");
                cfg.weights_defaulted = false;
            }
        }
        cfg.weights.validate(n);

        ScenarioDefaults defaults;
        if (root["defaults"]) defaults = parse_defaults(root["defaults"]);
        if (const auto list = root["scenarios"]) {
            if (!list.IsSequence()) config_error("scenarios", "expected a list");
            for (std::size_t i = 0; i < list.size(); ++i)
                cfg.scenarios.push_back(parse_scenario(list[i], i, defaults, plant));
            cfg.scenarios_defaulted = false;
        } else {
            cfg.scenarios = default_scenarios(plant);
            for (auto& s : cfg.scenarios) apply_defaults(s, defaults);
        }
        for (const auto& s : cfg.scenarios) s.validate(plant);

        if (root["output_dir"]) cfg.output_dir = root["output_dir"].as<std::string>();
    } catch (const YAML::Exception& e) {
        config_error("config", e.what());
    }
    return cfg;
}

ProjectConfig load_project(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::io, "cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const fs::path parent = fs::path(path).parent_path();
    return parse_project(buf.str(), parent.empty() ? "." : parent.string());
}

std::string linear_model_to_json(const LinearModel& model, const ControllabilityReport* report) {
    json j;
    j["format"] = "simo-linear-model/1";
    j["n"] = model.state_dim();
    j["q"] = model.output_dim();
    j["A"] = to_json(model.A);
    j["B"] = to_json(model.B);
    j["E"] = to_json(model.E);
    j["x_e"] = to_json(model.x_e);
    j["u_e"] = model.u_e;
    j["epsilon_applied"] = model.epsilon_applied;
    j["epsilon"] = to_json(model.epsilon);
    j["drift_residual"] = model.drift_residual;
    j["warnings"] = model.warnings;
    if (report) {
        j["controllability"] = {{"rank", report->rank},
                                {"determinant", report->determinant},
                                {"controllable", report->controllable},
                                {"singular_values", to_json(report->singular_values)}};
    }
    return j.dump(2);
}

LinearModel linear_model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::configuration, std::string("model JSON: ") + e.what());
    }
    try {
        if (j.value("format", "") != "simo-linear-model/1")
            fail(ErrorKind::configuration, "model JSON has an unknown format tag");
        LinearModel m;
        m.A = matrix_from_json(j, "A");
        m.B = vector_from_json(j, "B");
        m.E = matrix_from_json(j, "E");
        m.x_e = vector_from_json(j, "x_e");
        m.u_e = j.value("u_e", 0.0);
        m.epsilon_applied = j.value("epsilon_applied", false);
        m.epsilon = vector_from_json(j, "epsilon");
        m.drift_residual = j.value("drift_residual", 0.0);
        if (j.contains("warnings")) m.warnings = j["warnings"].get<std::vector<std::string>>();
        const auto n = m.A.rows();
        if (m.A.cols() != n || m.B.size() != n || m.E.cols() != n || m.x_e.size() != n || m.epsilon.size() != n)
            fail(ErrorKind::configuration, "model JSON has inconsistent dimensions");
        return m;
    } catch (const json::exception& e) {
        fail(ErrorKind::configuration, std::string("model JSON: ") + e.what());
    }
}

}  // namespace simo
