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

// Experiment and sweep configuration.
//
// Files are INI-style: `[section]` headers followed by `key = value` lines,
// `#` or `;` comments. A meta.json written by a run is accepted too; its
// "config" object uses the same section/key names.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "opgrowth/analysis.hpp"
#include "opgrowth/spin_algebra.hpp"

namespace opgrowth {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Engine { Lanczos, Arnoldi, Both };
std::string_view to_string(Engine e);
Engine parse_engine(std::string_view text);

// Named coupling presets. Selecting one overwrites g and h; an explicit g or h
// that differs from the preset switches the regime to Custom.
enum class Regime { Custom, Integrable, Chaotic };
std::string_view to_string(Regime r);
Regime parse_regime(std::string_view text);

inline constexpr double kChaoticG = -1.05;
inline constexpr double kChaoticH = 0.5;
inline constexpr double kIntegrableG = -1.05;
inline constexpr double kIntegrableH = 0.0;

enum class ReorthMode { Auto, On, Off };
std::string_view to_string(ReorthMode r);
ReorthMode parse_reorth(std::string_view text);

struct TimeGrid {
  double t_min = 0.0;
  double t_max = 5.0;
  int points = 101;

  std::vector<double> values() const;
  bool operator==(const TimeGrid&) const = default;
};

struct ExperimentConfig {
  // [run]
  std::string run_label = "run";
  Engine engine = Engine::Both;
  std::string output_dir = "out";

  // [model]
  int n_sites = 6;
  Regime regime = Regime::Chaotic;
  double g = kChaoticG;
  double h = kChaoticH;

  // [dissipation]
  JumpMode jump_mode = JumpMode::Full;
  double alpha = 0.0;
  double gamma = 0.0;

  // [seed]
  int seed_site = 3;
  Pauli seed_pauli = Pauli::Z;

  // [krylov]
  int max_steps = 60;
  double tol = 1e-10;
  ReorthMode reorth = ReorthMode::Auto;
  int orthogonalization_passes = 2;

  // [analysis]
  Smoothing smoothing{5, 41};
  int growth_lo = 5;
  int growth_hi = 30;
  GrowthThresholds thresholds{};
  // Ritz values come from at most this many leading Hessenberg columns; 0 = all.
  int ritz_limit = 1024;

  // [wavefunctions]
  std::optional<TimeGrid> time_grid;

  // [output]
  // Leading block of the Hessenberg array written to hessenberg.csv; 0 = all.
  int hessenberg_limit = 256;

  // Effective Lanczos reorthogonalization: Auto means on for closed dynamics.
  bool lanczos_reorth() const;
  bool is_closed() const;

  void validate() const;

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);

  bool operator==(const ExperimentConfig&) const = default;
};

struct SweepAxis {
  std::string parameter;  // "section.key" or bare key, e.g. alpha, model.regime
  std::vector<std::string> values;
};

struct SweepConfig {
  ExperimentConfig base;
  std::vector<SweepAxis> axes;
  // Adds one closed-dynamics point per combination of the non-dissipation axes.
  bool include_closed = false;
  int parallelism = 1;

  void validate() const;
};

struct LoadedConfig {
  ExperimentConfig experiment;
  std::optional<SweepConfig> sweep;
};

// Parses INI text. `origin` only labels error messages.
LoadedConfig parse_config(const std::string& text, const std::string& origin = "<string>");

// Dispatches on extension: .json is read as meta.json, anything else as INI.
LoadedConfig load_config(const std::filesystem::path& path);

// Sets one field from its textual form, e.g. ("alpha", "0.05") or
// ("dissipation.jump_mode", "closed").
void set_field(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// "alpha" -> "dissipation.alpha"; throws ConfigError for unknown or ambiguous keys.
std::string qualified_key(const std::string& key);

// Searches $OPGROWTH_PRESET_DIR, then the source tree's presets/ directory.
std::filesystem::path find_preset(const std::string& name);

// Resolves a relative output_dir against $OPGROWTH_OUTPUT_ROOT when set.
std::filesystem::path resolve_output_dir(const std::string& output_dir);

}  // namespace opgrowth
