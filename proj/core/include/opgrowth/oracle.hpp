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

// Self-test battery comparing the sparse machinery with dense reference
// computations at small N.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace opgrowth {

inline constexpr int kMaxOracleSites = 4;

struct OracleCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured deviation
  double threshold = 0.0;  // pass iff value < threshold
};

// Runs every check at n_sites (1..kMaxOracleSites). Deterministic for a given seed.
std::vector<OracleCheck> run_oracle_battery(int n_sites, std::uint64_t seed = 20240611);

}  // namespace opgrowth
