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

// Pauli strings, the open-chain transverse-field Ising Hamiltonian and the
// boundary-damping / bulk-dephasing jump operators.
//
// Tensor convention: site 1 is the leftmost Kronecker factor, so on an
// N-site chain site s acts on bit (N - s) of the computational index.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "opgrowth/common.hpp"

namespace opgrowth {

enum class Pauli { X, Y, Z, Plus, Minus };

// Accepts x, y, z, +, -, plus, minus (case-insensitive).
Pauli parse_pauli(std::string_view text);
std::string_view to_string(Pauli p);

enum class JumpMode {
  Full,           // boundary damping + bulk dephasing
  BoundaryOnly,   // gamma ignored
  DephasingOnly,  // alpha ignored
  Closed,         // no jump operators
};

JumpMode parse_jump_mode(std::string_view text);
std::string_view to_string(JumpMode mode);

// Dense operator on the 2^N-dimensional chain Hilbert space.
class SpinOperator {
 public:
  SpinOperator(int n_sites, DenseMatrix matrix, std::string label = {});

  int n_sites() const { return n_sites_; }
  Index dim() const { return matrix_.rows(); }
  const DenseMatrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }

  cplx operator()(Index row, Index col) const { return matrix_(row, col); }

  // max |A_ij - conj(A_ji)|
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

  SpinOperator adjoint() const;
  SpinOperator scaled(cplx factor, std::string label) const;

 private:
  int n_sites_;
  DenseMatrix matrix_;
  std::string label_;
};

SpinOperator identity_operator(int n_sites);

// I x ... x sigma^which x ... x I with the Pauli at `site` (1-based).
// sigma^+- = (sigma^x +- i sigma^y) / 2.
SpinOperator site_operator(int n_sites, int site, Pauli which);

// -sum_{j<N} Z_j Z_{j+1} - g sum_j X_j - h sum_j Z_j, open boundaries.
SpinOperator build_tfim(int n_sites, double g, double h);

// Full: sqrt(a) s1+, sqrt(a) s1-, sqrt(a) sN+, sqrt(a) sN-, then sqrt(g) Z_i
// for i = 1..N. Zero-amplitude families are dropped rather than stored.
std::vector<SpinOperator> build_jump_operators(int n_sites, double alpha, double gamma,
                                               JumpMode mode);

}  // namespace opgrowth
