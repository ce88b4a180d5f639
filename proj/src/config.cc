// "key = value" trial configuration files.

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "advplan/error.h"
#include "advplan/harness.h"

namespace advplan {
namespace {

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double ToDouble(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kConfig,
                "key '" + key + "': '" + value + "' is not a number");
  }
  return out;
}

long long ToInteger(const std::string& key, const std::string& value) {
  long long out = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kConfig,
                "key '" + key + "': '" + value + "' is not an integer");
  }
  return out;
}

uint64_t ToSeed(const std::string& key, const std::string& value) {
  uint64_t out = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kConfig,
                "key '" + key + "': '" + value + "' is not a u64");
  }
  return out;
}

bool ToBool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw Error(ErrorCode::kConfig,
              "key '" + key + "': '" + value + "' is not a boolean");
}

using Setter = std::function<void(TrialConfig&, const std::string& key,
                                  const std::string& value)>;

const std::map<std::string, Setter>& Setters() {
  static const auto* setters = new std::map<std::string, Setter>{
      // map_kind is applied before everything else; see ParseConfig.
      {"map_kind",
       [](TrialConfig& c, const std::string&, const std::string& v) {
         const Bounds bounds = c.map_spec.bounds;
         c.map_spec = DefaultMapSpec(ParseMapKind(v));
         c.map_spec.bounds = bounds;
       }},
      {"obstacle_count",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.map_spec.obstacle_count = static_cast<int>(ToInteger(k, v));
       }},
      {"radius_min",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.map_spec.radius_range.first = ToDouble(k, v);
       }},
      {"radius_max",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.map_spec.radius_range.second = ToDouble(k, v);
       }},
      {"weights",
       [](TrialConfig& c, const std::string&, const std::string& v) {
         c.weights_config = ParseWeightsConfig(v);
       }},
      {"w_d",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.default_weights.w_d = c.conservative_weights.w_d = ToDouble(k, v);
       }},
      {"default_w_c",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.default_weights.w_c = ToDouble(k, v);
       }},
      {"conservative_w_c",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.conservative_weights.w_c = ToDouble(k, v);
       }},
      {"epsilon",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.default_weights.epsilon = c.conservative_weights.epsilon =
             ToDouble(k, v);
       }},
      {"method",
       [](TrialConfig& c, const std::string&, const std::string& v) {
         c.solver.method = ParseMethod(v);
       }},
      {"max_iters",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.solver.max_iters = static_cast<int>(ToInteger(k, v));
       }},
      {"grad_tol",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.solver.grad_tol = ToDouble(k, v);
       }},
      {"lbfgs_memory",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.solver.lbfgs_memory = static_cast<int>(ToInteger(k, v));
       }},
      {"armijo_c",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.solver.armijo_c = ToDouble(k, v);
       }},
      {"backtrack_factor",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.solver.backtrack_factor = ToDouble(k, v);
       }},
      {"policy",
       [](TrialConfig& c, const std::string&, const std::string& v) {
         c.policy.kind = ParsePolicyKind(v);
       }},
      {"r_min",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.policy.r_bounds.first = ToDouble(k, v);
       }},
      {"r_max",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.policy.r_bounds.second = ToDouble(k, v);
       }},
      {"bo_iters",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.policy.bo_iters = static_cast<int>(ToInteger(k, v));
       }},
      {"ei_xi",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.policy.ei_xi = ToDouble(k, v);
       }},
      {"bo_candidates",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.policy.bo_candidates = static_cast<int>(ToInteger(k, v));
       }},
      {"max_gp_points",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.policy.max_gp_points = static_cast<int>(ToInteger(k, v));
       }},
      {"tune_gp",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.policy.tune_hyperparameters = ToBool(k, v);
       }},
      {"gp_length_theta",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.policy.hyper.length_theta = ToDouble(k, v);
       }},
      {"gp_length_r",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.policy.hyper.length_r = ToDouble(k, v);
       }},
      {"gp_signal_variance",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.policy.hyper.signal_variance = ToDouble(k, v);
       }},
      {"gp_noise_variance",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.policy.hyper.noise_variance = ToDouble(k, v);
       }},
      {"target_speed",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.target_speed = ToDouble(k, v);
       }},
      {"adversary_vmax",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.adversary_vmax = ToDouble(k, v);
       }},
      {"safety_radius",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.safety_radius = ToDouble(k, v);
       }},
      {"ignore_safety_radius",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.ignore_safety_radius = ToBool(k, v);
       }},
      {"max_steps",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.max_steps = static_cast<int>(ToInteger(k, v));
       }},
      {"seed",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.seed = ToSeed(k, v);
       }},
      {"step_dt",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.step_dt = ToDouble(k, v);
       }},
      {"num_waypoints",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.num_waypoints = static_cast<int>(ToInteger(k, v));
       }},
      {"segment_dt",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.segment_dt = ToDouble(k, v);
       }},
      {"adversary_radius",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.adversary_radius = ToDouble(k, v);
       }},
      {"goal_radius",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.goal_radius = ToDouble(k, v);
       }},
      {"repulsion_margin",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.repulsion_margin = ToDouble(k, v);
       }},
      {"spawn_min_distance",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.spawn_min_distance = ToDouble(k, v);
       }},
      {"warm_start",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.warm_start = ToBool(k, v);
       }},
      {"sweep_obstacle_radius",
       [](TrialConfig& c, const std::string& k, const std::string& v) {
         c.sweep_obstacle_radius = ToDouble(k, v);
       }},
  };
  return *setters;
}

}  // namespace

TrialConfig ParseConfig(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfig,
                  "line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    if (Setters().count(key) == 0) {
      throw Error(ErrorCode::kConfig, "line " + std::to_string(line_no) +
                                          ": unknown key '" + key + "'");
    }
    entries.emplace_back(std::move(key), std::move(value));
  }
  TrialConfig config;
  // map_kind resets the map defaults, so it goes first.
  for (const auto& [key, value] : entries) {
    if (key == "map_kind") Setters().at(key)(config, key, value);
  }
  for (const auto& [key, value] : entries) {
    if (key != "map_kind") Setters().at(key)(config, key, value);
  }
  config.Validate();
  return config;
}

TrialConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open config '" + path.string() + "'");
  }
  return ParseConfig(in);
}

}  // namespace advplan
