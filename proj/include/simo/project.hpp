#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simo/linearize.hpp"
#include "simo/lqr.hpp"
#include "simo/robot.hpp"
#include "simo/sim.hpp"

namespace simo {

enum class PlantType { balancing_robot, linear };

struct PlantConfig {
    PlantType type = PlantType::balancing_robot;
    robot::RobotParams robot;
    // linear plants: xdot = A x + B u
    MatrixXd A;
    VectorXd B;
    int q = 0;
    bool mechanical = true;
};

// Everything a CLI run needs. Loaded from a YAML document:
//
//   plant:         { type: balancing-robot, angle_unit: degrees, params: {...} }
//                  { type: linear, q: 1, mechanical: true, A: [[..]], B: [..] }
//                  { file: other.yaml }   (relative to this file)
//   linearization: { equilibrium: [..], epsilon: [..] | scalar }
//   lqr:           { Q: [..diagonal..], R: 1 }
//   defaults:      { duration, dt, ts, filter_n, saturation: [lo, hi] }
//   scenarios:     [ { name, controller, x0, duration, dt, ts, filter_n,
//                      saturate, saturation, reference } ]
//   output_dir:    path
//
// Unknown keys are rejected.
struct ProjectConfig {
    PlantConfig plant;
    std::optional<VectorXd> equilibrium;
    std::optional<VectorXd> epsilon;
    LqrWeights weights;
    bool weights_defaulted = true;
    std::vector<ScenarioConfig> scenarios;
    bool scenarios_defaulted = true;
    std::string output_dir;
};

ProjectConfig default_project();
ProjectConfig load_project(const std::string& path);
ProjectConfig parse_project(const std::string& yaml_text, const std::string& base_dir = ".");

AffineSystem build_plant(const PlantConfig& plant);

// SFR and PD, each continuous and sampled (T_s = 0.1 s, N = 10, +-12 V),
// 25 s from a 10 deg tilt (or x1 = 1 for generic plants).
std::vector<ScenarioConfig> default_scenarios(const AffineSystem& plant);

// Round-trips bit-exactly through linear_model_from_json.
std::string linear_model_to_json(const LinearModel& model, const ControllabilityReport* report = nullptr);
LinearModel linear_model_from_json(const std::string& text);

}  // namespace simo
