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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace opgrowth {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

inline constexpr cplx kI{0.0, 1.0};

// Largest chain handled. 4^8 = 65536 is already far past desk-scale runs.
inline constexpr int kMaxSites = 8;

// Error categories. Range and domain errors reuse the standard types so
// callers can catch either the specific or the generic base.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using RangeError = std::out_of_range;
using DomainError = std::domain_error;

// Hilbert-space dimension 2^N.
inline Index hilbert_dim(int n_sites) { return Index{1} << n_sites; }

// Doubled-space dimension 4^N.
inline Index liouville_dim(int n_sites) { return Index{1} << (2 * n_sites); }

}  // namespace opgrowth
