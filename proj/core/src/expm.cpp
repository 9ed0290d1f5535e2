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

#include "opgrowth/expm.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace opgrowth {

namespace {

// sum_k (dt * factor * A)^k v / k!, stopped once a term is negligible.
Vector taylor_step(const SparseMatrix& a, cplx scaled, const Vector& v, int max_terms) {
  Vector sum = v;
  Vector term = v;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double vnorm = v.norm();
  for (int k = 1; k <= max_terms; ++k) {
    Vector next = a * term;
    term = (scaled / static_cast<double>(k)) * next;
    sum += term;
    if (term.norm() <= 0.5 * kEps * std::max(sum.norm(), vnorm)) break;
  }
  return sum;
}

}  // namespace

double one_norm(const SparseMatrix& a) {
  Eigen::VectorXd col_sums = Eigen::VectorXd::Zero(a.cols());
  for (Index k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) col_sums(it.col()) += std::abs(it.value());
  }
  return col_sums.size() ? col_sums.maxCoeff() : 0.0;
}

Vector expm_multiply(const SparseMatrix& a, cplx factor, double t, const Vector& v,
                     const ExpmOptions& options) {
  if (!std::isfinite(t)) throw DomainError("time must be finite");
  if (a.rows() != a.cols() || a.cols() != v.size()) throw ShapeError("expm_multiply shape mismatch");
  if (t == 0.0 || v.size() == 0) return v;

  const double anorm = one_norm(a) * std::abs(factor);
  if (anorm == 0.0) return v;

  const double sign = t < 0 ? -1.0 : 1.0;
  double remaining = std::abs(t);
  double h = std::min(remaining, 1.0 / anorm);
  Vector y = v;
  int substeps = 0;
  while (remaining > 0.0) {
    if (++substeps > options.max_substeps) {
      throw StateError(fmt::format("expm_multiply exceeded {} sub-steps", options.max_substeps));
    }
    h = std::min(h, remaining);
    const cplx full = factor * (sign * h);
    const cplx half = 0.5 * full;
    const Vector coarse = taylor_step(a, full, y, options.max_taylor_terms);
    const Vector fine =
        taylor_step(a, half, taylor_step(a, half, y, options.max_taylor_terms),
                    options.max_taylor_terms);
    const double err = (coarse - fine).norm();
    if (err > options.local_tol * std::max(fine.norm(), 1e-300) && h > 1e-300) {
      h *= 0.5;
      continue;
    }
    y = fine;
    remaining -= h;
    // Guard against an endless tail from rounding in `remaining`.
    if (remaining < 1e-15 * std::abs(t)) remaining = 0.0;
  }
  return y;
}

}  // namespace opgrowth
