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

// Operators in the doubled Hilbert space.
//
// Vectorization is column stacking: entry (i + D*j) of vec(X) is X(i, j), so
// vec(A X B) = (B^T kron A) vec(X). Under this convention I kron H - H^T kron I
// acts as the commutator [H, .].
//
// The infinite-temperature inner product (A|B) = Tr(A^dag B) / D carries the
// 1/D factor itself; vectors never absorb it.

#pragma once

#include <cmath>
#include <iosfwd>
#include <span>

#include "opgrowth/common.hpp"
#include "opgrowth/spin_algebra.hpp"

namespace opgrowth {

class SuperVector {
 public:
  SuperVector(int n_sites, Vector entries);

  static SuperVector zero(int n_sites);

  int n_sites() const { return n_sites_; }
  Index size() const { return entries_.size(); }
  Index hilbert_dim() const { return opgrowth::hilbert_dim(n_sites_); }

  const Vector& entries() const { return entries_; }
  Vector& entries() { return entries_; }

  // Wightmann norm sqrt((O|O)).
  double norm() const;
  SuperVector normalized() const;

 private:
  int n_sites_;
  Vector entries_;
};

SuperVector vectorize_operator(const SpinOperator& op);
SpinOperator devectorize(const SuperVector& v, std::string label = {});

// conj(a) . b / D, conjugate-linear in `a`.
cplx wightmann_inner(const SuperVector& a, const SuperVector& b);

// Raw-vector form used inside the Krylov loops.
inline cplx wightmann_inner(const Vector& a, const Vector& b, Index hilbert_dim) {
  return a.dot(b) / static_cast<double>(hilbert_dim);
}
inline double wightmann_norm(const Vector& a, Index hilbert_dim) {
  return a.norm() / std::sqrt(static_cast<double>(hilbert_dim));
}

class SuperOperator {
 public:
  SuperOperator(int n_sites, SparseMatrix matrix);

  int n_sites() const { return n_sites_; }
  Index dim() const { return matrix_.rows(); }
  Index hilbert_dim() const { return opgrowth::hilbert_dim(n_sites_); }
  const SparseMatrix& matrix() const { return matrix_; }
  DenseMatrix dense() const { return DenseMatrix(matrix_); }
  Index nonzeros() const { return matrix_.nonZeros(); }

  // Single-threaded CSR product; summation order is fixed by the sparsity
  // pattern, so repeated calls are bitwise reproducible.
  Vector apply(const Vector& v) const;
  SuperVector apply(const SuperVector& v) const;

  // max |L_ij - conj(L_ji)|
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

  // Frobenius norm of the matrix (entries as stored).
  double frobenius_norm() const { return matrix_.norm(); }

 private:
  int n_sites_;
  SparseMatrix matrix_;
};

enum class HermiticityCheck { Throw, Warn, Ignore };

// I kron H - H^T kron I, i.e. vec([H, X]).
SuperOperator build_liouvillian(const SpinOperator& h,
                                HermiticityCheck check = HermiticityCheck::Throw);

// Heisenberg-picture Lindbladian
//   L = (I kron H - H^T kron I)
//     + (i/2) sum_k (I kron L_k^dag L_k + L_k^T L_k^* kron I - 2 L_k^T kron L_k^dag),
// whose action on vec(X) is vec([H,X] - i sum_k (L_k^dag X L_k - {L_k^dag L_k, X}/2)).
SuperOperator build_lindbladian(const SpinOperator& h, std::span<const SpinOperator> jumps,
                                HermiticityCheck check = HermiticityCheck::Throw);

// L = C + i Dt with C = (L + L^dag)/2 and Dt = (L - L^dag)/(2i), both Hermitian.
struct HermitianSplit {
  SuperOperator hermitian;
  SuperOperator antihermitian;
};
HermitianSplit hermitian_split(const SuperOperator& l);

// Plain-text "row,col,re,im" lines, one per stored entry, row-major.
void write_triplets(const SuperOperator& l, std::ostream& out);

}  // namespace opgrowth
