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

#include "opgrowth/common.hpp"

namespace opgrowth {

struct ExpmOptions {
  // Accepted local error per sub-step, relative to ||v||.
  double local_tol = 1e-10;
  int max_taylor_terms = 60;
  int max_substeps = 1 << 20;
};

// exp(t * factor * A) v without forming the exponential.
//
// Truncated Taylor sub-steps with ||A||_1 * |t_sub| <= 1; every sub-step is
// checked by step doubling and halved until the two estimates agree to
// local_tol.
Vector expm_multiply(const SparseMatrix& a, cplx factor, double t, const Vector& v,
                     const ExpmOptions& options = {});

// Induced 1-norm (max column sum).
double one_norm(const SparseMatrix& a);

}  // namespace opgrowth
