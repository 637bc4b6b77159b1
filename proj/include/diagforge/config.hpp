#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

// Workbench defaults, optionally read from a JSON file:
//
//   {"budget": 100000, "space": 16, "omega_cap": 4, "pr_step_cap": 10000000,
//    "range": "0..100", "format": "text", "seed": 1, "threads": 1}
//
// Every key is optional. The file comes from --config or DIAGFORGE_CONFIG;
// command-line flags override it.
namespace diagforge {

struct WorkbenchConfig {
  std::uint64_t budget = 100'000;  // step budget for observed runs
  std::uint64_t space = 16;        // space bound s
  std::uint64_t omega_cap = 4;     // ordinal clock cap, omega times this
  std::uint64_t pr_step_cap = 10'000'000;
  std::string range = "0..100";  // default sweep range
  bool json = false;
  std::uint64_t seed = 1;
  std::uint64_t threads = 1;

  void validate() const {
    if (budget == 0) throw std::invalid_argument("config: budget must be positive");
    if (space == 0) throw std::invalid_argument("config: space bound must be at least 1");
    if (omega_cap == 0) throw std::invalid_argument("config: omega_cap must be positive");
    if (pr_step_cap == 0) throw std::invalid_argument("config: pr_step_cap must be positive");
    if (threads == 0) throw std::invalid_argument("config: threads must be positive");
  }
};

inline WorkbenchConfig config_from_json(const nlohmann::json& j) {
  WorkbenchConfig c;
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  auto num = [&](const char* key, std::uint64_t& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_unsigned()) throw std::invalid_argument(std::string("config: ") + key + " must be a natural");
    out = j[key].get<std::uint64_t>();
  };
  num("budget", c.budget);
  num("space", c.space);
  num("omega_cap", c.omega_cap);
  num("pr_step_cap", c.pr_step_cap);
  num("seed", c.seed);
  num("threads", c.threads);
  if (j.contains("range")) c.range = j["range"].get<std::string>();
  if (j.contains("format")) {
    const auto f = j["format"].get<std::string>();
    if (f != "text" && f != "json") throw std::invalid_argument("config: format must be text or json");
    c.json = f == "json";
  }
  c.validate();
  return c;
}

/// Loads `path`, or the file named by DIAGFORGE_CONFIG, or the defaults.
inline WorkbenchConfig load_config(std::optional<std::string> path) {
  if (!path) {
    if (const char* env = std::getenv("DIAGFORGE_CONFIG"); env && *env) path = env;
  }
  if (!path) return {};
  std::ifstream in(*path);
  if (!in) throw std::invalid_argument("cannot open config file " + *path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config file " + *path + ": " + e.what());
  }
  return config_from_json(j);
}

}  // namespace diagforge
