// Copyright 2026 The opgrowth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "opgrowth/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#ifndef OPGROWTH_DEFAULT_PRESET_DIR
#define OPGROWTH_DEFAULT_PRESET_DIR "presets"
#endif

namespace opgrowth {

namespace {

namespace pt = boost::property_tree;

// Every accepted "section.key", in the order used for JSON echo.
constexpr std::array kFields = {
    "run.label",          "run.engine",
    "run.output_dir",     "model.n_sites",
    "model.regime",       "model.g",
    "model.h",            "dissipation.jump_mode",
    "dissipation.alpha",  "dissipation.gamma",
    "seed.site",          "seed.pauli",
    "krylov.max_steps",   "krylov.tol",
    "krylov.reorth",      "krylov.orthogonalization_passes",
    "analysis.smoothing_window", "analysis.smoothing_start",
    "analysis.growth_window",    "analysis.beta_linear",
    "analysis.r2_linear",        "analysis.beta_sublinear",
    "analysis.ritz_limit",
    "wavefunctions.t_min",       "wavefunctions.t_max",
    "wavefunctions.points",      "output.hessenberg_limit",
};

std::string qualify(const std::string& key) {
  if (key.find('.') != std::string::npos) {
    if (std::find(kFields.begin(), kFields.end(), key) == kFields.end()) {
      throw ConfigError(key, "unknown configuration key");
    }
    return key;
  }
  std::string found;
  for (const char* f : kFields) {
    const std::string full(f);
    if (full.substr(full.find('.') + 1) == key) {
      if (!found.empty()) throw ConfigError(key, "ambiguous key; qualify it with its section");
      found = full;
    }
  }
  if (found.empty()) throw ConfigError(key, "unknown configuration key");
  return found;
}

template <typename Parse>
auto parse_or_throw(const std::string& field, const std::string& value, Parse parse) {
  try {
    return parse(value);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(field, fmt::format("cannot parse '{}': {}", value, e.what()));
  }
}

double to_double(const std::string& field, const std::string& value) {
  return parse_or_throw(field, value, [&](const std::string& v) {
    std::size_t pos = 0;
    const double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return out;
  });
}

int to_int(const std::string& field, const std::string& value) {
  return parse_or_throw(field, value, [&](const std::string& v) {
    std::size_t pos = 0;
    const int out = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return out;
  });
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  boost::split(parts, value, boost::is_any_of(","));
  for (auto& p : parts) boost::trim(p);
  parts.erase(std::remove(parts.begin(), parts.end(), std::string{}), parts.end());
  return parts;
}

std::string fmt_double(double v) { return fmt::format("{}", v); }

}  // namespace

std::string qualified_key(const std::string& key) { return qualify(key); }

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::Lanczos: return "lanczos";
    case Engine::Arnoldi: return "arnoldi";
    case Engine::Both: return "both";
  }
  return "?";
}

Engine parse_engine(std::string_view text) {
  if (text == "lanczos") return Engine::Lanczos;
  if (text == "arnoldi") return Engine::Arnoldi;
  if (text == "both") return Engine::Both;
  throw DomainError(fmt::format("unknown engine '{}'", text));
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Custom: return "custom";
    case Regime::Integrable: return "integrable";
    case Regime::Chaotic: return "chaotic";
  }
  return "?";
}

Regime parse_regime(std::string_view text) {
  if (text == "custom") return Regime::Custom;
  if (text == "integrable") return Regime::Integrable;
  if (text == "chaotic") return Regime::Chaotic;
  throw DomainError(fmt::format("unknown regime '{}'", text));
}

std::string_view to_string(ReorthMode r) {
  switch (r) {
    case ReorthMode::Auto: return "auto";
    case ReorthMode::On: return "on";
    case ReorthMode::Off: return "off";
  }
  return "?";
}

ReorthMode parse_reorth(std::string_view text) {
  if (text == "auto") return ReorthMode::Auto;
  if (text == "on" || text == "true") return ReorthMode::On;
  if (text == "off" || text == "false") return ReorthMode::Off;
  throw DomainError(fmt::format("unknown reorth mode '{}'", text));
}

std::vector<double> TimeGrid::values() const {
  std::vector<double> out;
  if (points == 1) return {t_min};
  for (int i = 0; i < points; ++i) {
    out.push_back(t_min + (t_max - t_min) * static_cast<double>(i) / (points - 1));
  }
  return out;
}

bool ExperimentConfig::is_closed() const {
  return jump_mode == JumpMode::Closed ||
         (alpha == 0.0 && gamma == 0.0) ||
         (jump_mode == JumpMode::BoundaryOnly && alpha == 0.0) ||
         (jump_mode == JumpMode::DephasingOnly && gamma == 0.0);
}

bool ExperimentConfig::lanczos_reorth() const {
  switch (reorth) {
    case ReorthMode::On: return true;
    case ReorthMode::Off: return false;
    case ReorthMode::Auto: return is_closed();
  }
  return false;
}

void ExperimentConfig::validate() const {
  if (run_label.empty() || run_label.find('/') != std::string::npos) {
    throw ConfigError("run.label", "must be non-empty and contain no '/'");
  }
  if (n_sites < 1 || n_sites > kMaxSites) {
    throw ConfigError("model.n_sites", fmt::format("must lie in [1, {}]", kMaxSites));
  }
  if (!std::isfinite(g) || !std::isfinite(h)) throw ConfigError("model.g", "couplings must be finite");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("dissipation.alpha", "must be >= 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ConfigError("dissipation.gamma", "must be >= 0");
  if (seed_site < 1 || seed_site > n_sites) {
    throw ConfigError("seed.site", fmt::format("must lie in [1, {}]", n_sites));
  }
  if (max_steps < 1) throw ConfigError("krylov.max_steps", "must be >= 1");
  if (!(tol > 0.0)) throw ConfigError("krylov.tol", "must be > 0");
  if (orthogonalization_passes < 1 || orthogonalization_passes > 3) {
    throw ConfigError("krylov.orthogonalization_passes", "must be 1, 2 or 3");
  }
  if (smoothing.window < 1) throw ConfigError("analysis.smoothing_window", "must be >= 1");
  if (smoothing.n_start < 1) throw ConfigError("analysis.smoothing_start", "must be >= 1");
  if (growth_lo < 1 || growth_hi - growth_lo + 1 < 8) {
    throw ConfigError("analysis.growth_window", "needs n_lo >= 1 and at least 8 points");
  }
  if (!(thresholds.beta_sublinear <= thresholds.beta_linear)) {
    throw ConfigError("analysis.beta_sublinear", "must not exceed analysis.beta_linear");
  }
  if (ritz_limit < 0) throw ConfigError("analysis.ritz_limit", "must be >= 0");
  if (time_grid) {
    if (!std::isfinite(time_grid->t_min) || !std::isfinite(time_grid->t_max)) {
      throw ConfigError("wavefunctions.t_min", "time grid must be finite");
    }
    if (time_grid->points < 1) throw ConfigError("wavefunctions.points", "must be >= 1");
  }
  if (hessenberg_limit < 0) throw ConfigError("output.hessenberg_limit", "must be >= 0");
}

void set_field(ExperimentConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string field = qualify(key);
  const std::string value = boost::trim_copy(raw);
  auto enum_value = [&](auto parse) { return parse_or_throw(field, value, parse); };

  if (field == "run.label") {
    cfg.run_label = value;
  } else if (field == "run.engine") {
    cfg.engine = enum_value([](const std::string& v) { return parse_engine(v); });
  } else if (field == "run.output_dir") {
    cfg.output_dir = value;
  } else if (field == "model.n_sites") {
    cfg.n_sites = to_int(field, value);
  } else if (field == "model.regime") {
    cfg.regime = enum_value([](const std::string& v) { return parse_regime(v); });
    if (cfg.regime == Regime::Chaotic) {
      cfg.g = kChaoticG;
      cfg.h = kChaoticH;
    } else if (cfg.regime == Regime::Integrable) {
      cfg.g = kIntegrableG;
      cfg.h = kIntegrableH;
    }
  } else if (field == "model.g" || field == "model.h") {
    double& target = field == "model.g" ? cfg.g : cfg.h;
    const double v = to_double(field, value);
    if (v != target) cfg.regime = Regime::Custom;
    target = v;
  } else if (field == "dissipation.jump_mode") {
    cfg.jump_mode = enum_value([](const std::string& v) { return parse_jump_mode(v); });
  } else if (field == "dissipation.alpha") {
    cfg.alpha = to_double(field, value);
  } else if (field == "dissipation.gamma") {
    cfg.gamma = to_double(field, value);
  } else if (field == "seed.site") {
    cfg.seed_site = to_int(field, value);
  } else if (field == "seed.pauli") {
    cfg.seed_pauli = enum_value([](const std::string& v) { return parse_pauli(v); });
  } else if (field == "krylov.max_steps") {
    cfg.max_steps = to_int(field, value);
  } else if (field == "krylov.tol") {
    cfg.tol = to_double(field, value);
  } else if (field == "krylov.reorth") {
    cfg.reorth = enum_value([](const std::string& v) { return parse_reorth(v); });
  } else if (field == "krylov.orthogonalization_passes") {
    cfg.orthogonalization_passes = to_int(field, value);
  } else if (field == "analysis.smoothing_window") {
    cfg.smoothing.window = to_int(field, value);
  } else if (field == "analysis.smoothing_start") {
    cfg.smoothing.n_start = to_int(field, value);
  } else if (field == "analysis.growth_window") {
    const auto parts = split_list(value);
    if (parts.size() != 2) throw ConfigError(field, "expected 'n_lo, n_hi'");
    cfg.growth_lo = to_int(field, parts[0]);
    cfg.growth_hi = to_int(field, parts[1]);
  } else if (field == "analysis.beta_linear") {
    cfg.thresholds.beta_linear = to_double(field, value);
  } else if (field == "analysis.r2_linear") {
    cfg.thresholds.r2_linear = to_double(field, value);
  } else if (field == "analysis.beta_sublinear") {
    cfg.thresholds.beta_sublinear = to_double(field, value);
  } else if (field == "analysis.ritz_limit") {
    cfg.ritz_limit = to_int(field, value);
  } else if (field.rfind("wavefunctions.", 0) == 0) {
    if (!cfg.time_grid) cfg.time_grid = TimeGrid{};
    if (field == "wavefunctions.t_min") cfg.time_grid->t_min = to_double(field, value);
    if (field == "wavefunctions.t_max") cfg.time_grid->t_max = to_double(field, value);
    if (field == "wavefunctions.points") cfg.time_grid->points = to_int(field, value);
  } else if (field == "output.hessenberg_limit") {
    cfg.hessenberg_limit = to_int(field, value);
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["run"] = {{"label", run_label}, {"engine", to_string(engine)}, {"output_dir", output_dir}};
  j["model"] = {{"n_sites", n_sites}, {"regime", to_string(regime)}, {"g", g}, {"h", h}};
  j["dissipation"] = {{"jump_mode", to_string(jump_mode)}, {"alpha", alpha}, {"gamma", gamma}};
  j["seed"] = {{"site", seed_site}, {"pauli", to_string(seed_pauli)}};
  j["krylov"] = {{"max_steps", max_steps},
                 {"tol", tol},
                 {"reorth", to_string(reorth)},
                 {"orthogonalization_passes", orthogonalization_passes}};
  j["analysis"] = {{"smoothing_window", smoothing.window},
                   {"smoothing_start", smoothing.n_start},
                   {"growth_window", fmt::format("{},{}", growth_lo, growth_hi)},
                   {"beta_linear", thresholds.beta_linear},
                   {"r2_linear", thresholds.r2_linear},
                   {"beta_sublinear", thresholds.beta_sublinear},
                   {"ritz_limit", ritz_limit}};
  if (time_grid) {
    j["wavefunctions"] = {
        {"t_min", time_grid->t_min}, {"t_max", time_grid->t_max}, {"points", time_grid->points}};
  }
  j["output"] = {{"hessenberg_limit", hessenberg_limit}};
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("<json>", "configuration must be a JSON object");
  ExperimentConfig cfg;
  // Regime first so explicit couplings can override it.
  if (j.contains("model") && j["model"].contains("regime")) {
    set_field(cfg, "model.regime", j["model"]["regime"].get<std::string>());
  }
  for (const auto& [section, body] : j.items()) {
    if (!body.is_object()) throw ConfigError(section, "expected an object");
    for (const auto& [key, value] : body.items()) {
      const std::string field = section + "." + key;
      if (field == "model.regime") continue;
      std::string text;
      if (value.is_string()) {
        text = value.get<std::string>();
      } else if (value.is_number_integer()) {
        text = std::to_string(value.get<long long>());
      } else if (value.is_number()) {
        text = fmt_double(value.get<double>());
      } else {
        throw ConfigError(field, "expected a string or number");
      }
      set_field(cfg, field, text);
    }
  }
  cfg.validate();
  return cfg;
}

void SweepConfig::validate() const {
  base.validate();
  if (axes.empty() && !include_closed) throw ConfigError("sweep", "no sweep axes given");
  if (parallelism < 1) throw ConfigError("sweep.parallelism", "must be >= 1");
  std::set<std::string> seen;
  for (const auto& axis : axes) {
    const std::string q = qualify(axis.parameter);
    if (!seen.insert(q).second) throw ConfigError("sweep." + axis.parameter, "duplicate axis");
    if (axis.values.empty()) throw ConfigError("sweep." + axis.parameter, "axis has no values");
    // Every value must produce a valid point on its own.
    for (const auto& v : axis.values) {
      ExperimentConfig probe = base;
      set_field(probe, axis.parameter, v);
      probe.validate();
    }
  }
}

namespace {

// read_ini only understands whole-line comments; drop "  ; ..." and "  # ..." tails.
std::string strip_trailing_comments(const std::string& text) {
  std::istringstream in(text);
  std::string out;
  for (std::string line; std::getline(in, line);) {
    for (std::size_t i = 1; i < line.size(); ++i) {
      if ((line[i] == ';' || line[i] == '#') && std::isspace(static_cast<unsigned char>(line[i - 1]))) {
        line.erase(i);
        break;
      }
    }
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace

LoadedConfig parse_config(const std::string& text, const std::string& origin) {
  pt::ptree tree;
  try {
    std::istringstream in(strip_trailing_comments(text));
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin, fmt::format("line {}: {}", e.line(), e.message()));
  }

  LoadedConfig out;
  ExperimentConfig& cfg = out.experiment;
  // Regime first so explicit g / h lines override it regardless of order.
  if (auto model = tree.get_child_optional("model")) {
    if (auto regime = model->get_optional<std::string>("regime")) {
      set_field(cfg, "model.regime", *regime);
    }
  }
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(section, "key outside of a [section]");
    }
    if (section == "sweep") {
      SweepConfig sweep;
      for (const auto& [key, value] : body) {
        const std::string v = value.get_value<std::string>();
        if (key == "include_closed") {
          const std::string t = boost::to_lower_copy(boost::trim_copy(v));
          if (t != "true" && t != "false") throw ConfigError("sweep.include_closed", "expected true/false");
          sweep.include_closed = t == "true";
        } else if (key == "parallelism") {
          sweep.parallelism = to_int("sweep.parallelism", v);
        } else {
          qualify(key);
          sweep.axes.push_back({key, split_list(v)});
        }
      }
      out.sweep = std::move(sweep);
      continue;
    }
    for (const auto& [key, value] : body) {
      const std::string field = section + "." + key;
      if (field == "model.regime") continue;
      set_field(cfg, field, value.get_value<std::string>());
    }
  }
  cfg.validate();
  if (out.sweep) {
    out.sweep->base = cfg;
    out.sweep->validate();
  }
  return out;
}

LoadedConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open config file '{}'", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  if (path.extension() == ".json") {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(path.string(), e.what());
    }
    LoadedConfig out;
    out.experiment = ExperimentConfig::from_json(j.contains("config") ? j["config"] : j);
    return out;
  }
  return parse_config(buf.str(), path.string());
}

std::filesystem::path find_preset(const std::string& name) {
  std::vector<std::filesystem::path> dirs;
  if (const char* env = std::getenv("OPGROWTH_PRESET_DIR")) dirs.emplace_back(env);
  dirs.emplace_back(OPGROWTH_DEFAULT_PRESET_DIR);
  dirs.emplace_back("presets");
  for (const auto& dir : dirs) {
    const auto candidate = dir / (name + ".ini");
    if (std::filesystem::exists(candidate)) return candidate;
  }
  throw ConfigError("preset", fmt::format("no preset named '{}'", name));
}

std::filesystem::path resolve_output_dir(const std::string& output_dir) {
  std::filesystem::path p(output_dir);
  if (p.is_relative()) {
    if (const char* root = std::getenv("OPGROWTH_OUTPUT_ROOT"); root && *root) {
      return std::filesystem::path(root) / p;
    }
  }
  return p;
}

}  // namespace opgrowth
