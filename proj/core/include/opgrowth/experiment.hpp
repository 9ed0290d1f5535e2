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

// Single experiment: model construction, Krylov runs, analysis and output.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "opgrowth/analysis.hpp"
#include "opgrowth/config.hpp"
#include "opgrowth/krylov.hpp"

namespace opgrowth {

std::string_view library_version();

// Failure categories, also used as process exit codes by the CLI.
enum class ErrorCategory { None = 0, Generic = 1, Config = 2, Io = 3, Numerical = 4 };
std::string_view to_string(ErrorCategory c);

struct SeriesRecord {
  CoefficientSeries raw;
  CoefficientSeries smoothed;
  std::optional<GrowthFit> growth;  // absent when the window does not fit the series
};

struct RunBundle {
  ExperimentConfig config;

  bool ok = true;
  ErrorCategory error_category = ErrorCategory::None;
  std::string error;  // first failure, empty when ok

  Index superop_nonzeros = 0;
  bool superop_hermitian = false;
  std::size_t jump_count = 0;

  std::optional<LanczosRun> lanczos;
  std::optional<ArnoldiRun> arnoldi;
  std::vector<SeriesRecord> series;
  std::vector<cplx> ritz;
  Index ritz_order = 0;
  std::optional<double> recurrence_residual;
  std::optional<double> arnoldi_orthonormality;

  std::optional<WavefunctionSeries> lanczos_wavefunctions;
  std::optional<WavefunctionSeries> arnoldi_wavefunctions;

  double wall_seconds = 0.0;

  const SeriesRecord* find(SeriesKind kind) const;
};

// Builds the seed sigma^pauli at seed_site scaled to unit Wightmann norm.
SuperVector make_seed(const ExperimentConfig& cfg);

SuperOperator make_superoperator(const ExperimentConfig& cfg);

// Validates cfg (ConfigError escapes), then runs it. Failures after
// validation are caught and recorded in the bundle with whatever was
// computed before them.
RunBundle run_experiment(const ExperimentConfig& cfg);

// Writes coefficients.csv, hessenberg.csv, ritz.csv, wavefunctions.csv (when
// computed) and meta.json into dir, creating it. Throws IoError.
void emit_outputs(const RunBundle& bundle, const std::filesystem::path& dir);

// meta.json contents; also used by tests to check the config round-trip.
nlohmann::json bundle_metadata(const RunBundle& bundle);

}  // namespace opgrowth
