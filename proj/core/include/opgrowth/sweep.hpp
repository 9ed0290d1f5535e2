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

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "opgrowth/config.hpp"
#include "opgrowth/experiment.hpp"

namespace opgrowth {

struct SweepPoint {
  int index = 0;
  std::string name;  // e.g. "alpha-0.05__regime-chaotic"; also the subdirectory
  ExperimentConfig config;
};

// Cartesian product in axis order, last axis varying fastest, followed by
// the closed-dynamics points when requested.
std::vector<SweepPoint> expand_sweep(const SweepConfig& sweep);

struct SweepOutcome {
  SweepPoint point;
  bool ok = false;
  ErrorCategory category = ErrorCategory::None;
  std::string message;
  double wall_seconds = 0.0;
};

// Progress hook, called from worker threads under a lock.
using SweepObserver = std::function<void(const SweepOutcome&)>;

// Runs every point into root / point.name and writes root / manifest.csv.
// A failing point is recorded and does not stop the others.
std::vector<SweepOutcome> run_sweep(const SweepConfig& sweep, const std::filesystem::path& root,
                                    const SweepObserver& observer = {});

void write_manifest(const std::vector<SweepOutcome>& outcomes, const std::filesystem::path& path);

}  // namespace opgrowth
