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

// Krylov engines over the Wightmann inner product.
//
// Both engines stop when the freshly computed norm drops to
// tol * ||L O_0||. The termination index is the Krylov dimension K, i.e. the
// number of basis vectors produced.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "opgrowth/common.hpp"
#include "opgrowth/superop.hpp"

namespace opgrowth {

struct LanczosOptions {
  int max_steps = 60;
  double tol = 1e-10;
  // Project out every earlier basis vector (two sweeps) before each norm.
  bool full_reorth = false;
  // Retain all O_n. Without it only the last three vectors are kept.
  bool keep_basis = false;
  // Diagnostic threshold for the orthogonality-loss flag.
  double orthogonality_threshold = 1e-8;
};

struct LanczosRun {
  int n_sites = 0;
  std::vector<double> b;  // b_1, b_2, ...
  std::optional<DenseMatrix> basis;  // columns O_0, O_1, ...
  bool terminated = false;
  std::optional<int> termination_index;
  bool reorthogonalized = false;
  double scale = 0.0;       // ||L O_0||
  double final_norm = 0.0;  // norm that triggered termination, else last b_n
  // Largest |(O_i|O_j) - delta_ij| seen. Neighbour-only when no basis is kept.
  double orthogonality_loss = 0.0;
  bool orthogonality_lost = false;

  int krylov_dimension() const {
    return termination_index.value_or(static_cast<int>(b.size()) + 1);
  }
  SuperVector basis_vector(Index n) const;
};

// Zero-diagonal three-term recurrence
//   u_n = L O_{n-1} - b_{n-1} O_{n-2},  b_n = ||u_n||,  O_n = u_n / b_n,
// with b_0 = 0. No diagonal term is subtracted, also on non-Hermitian input.
LanczosRun lanczos(const SuperOperator& l, const SuperVector& seed, const LanczosOptions& options);

struct ArnoldiOptions {
  int max_steps = 200;
  double tol = 1e-10;
  // 1 = single classical Gram-Schmidt sweep, 2 = re-orthogonalized sweep.
  int orthogonalization_passes = 2;
};

// Upper-Hessenberg array h_{m,n} = <v_m|L|v_n> and the Arnoldi basis.
//
// Column j is stored packed with rows 0..j+1 (rows 0..j for the last column
// of a terminated run). Entries below the first subdiagonal are never stored.
struct ArnoldiRun {
  int n_sites = 0;
  std::vector<Vector> columns;
  DenseMatrix basis;  // v_0 .. v_p (v_p absent once terminated)
  bool terminated = false;
  std::optional<int> termination_index;
  double scale = 0.0;
  double final_norm = 0.0;  // h_{p,p-1}, or the sub-tolerance norm at termination

  // Number of Hessenberg columns p.
  Index steps() const { return static_cast<Index>(columns.size()); }
  int krylov_dimension() const {
    return termination_index.value_or(static_cast<int>(columns.size()) + 1);
  }

  cplx h(Index row, Index col) const;
  // (p+1) x p while running, p x p once terminated.
  DenseMatrix hessenberg() const;
  // Leading p x p block.
  DenseMatrix square_hessenberg() const;
  SuperVector basis_vector(Index n) const;
};

// Per step k: u_k = L v_{k-1}; h_{j,k-1} = <v_j|u_k> and u_k -= h_{j,k-1} v_j
// for all j < k; h_{k,k-1} = ||u_k||; stop on a vanishing norm, else
// v_k = u_k / h_{k,k-1}.
ArnoldiRun arnoldi(const SuperOperator& l, const SuperVector& seed, const ArnoldiOptions& options);

// max_j || (L Q_p - Q_p H_p - h_{p,p-1} v_p xi_p^T) e_j ||, Wightmann norm.
// A terminated run uses h_{p,p-1} = 0.
double check_recurrence_residual(const ArnoldiRun& run, const SuperOperator& l);

// max_{i,j} |<v_i|v_j> - delta_ij| over the retained basis.
double orthonormality_defect(const DenseMatrix& basis, Index hilbert_dim);

}  // namespace opgrowth
