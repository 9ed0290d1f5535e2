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

#include "opgrowth/krylov.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace opgrowth {

namespace {

void validate_inputs(const SuperOperator& l, const SuperVector& seed, int max_steps, double tol) {
  if (seed.n_sites() != l.n_sites()) {
    throw ShapeError(fmt::format("seed has {} sites, superoperator {}", seed.n_sites(),
                                 l.n_sites()));
  }
  if (max_steps < 1) throw DomainError(fmt::format("max_steps must be >= 1, got {}", max_steps));
  if (!(tol > 0.0)) throw DomainError(fmt::format("tolerance must be > 0, got {}", tol));
  const double norm = seed.norm();
  if (norm == 0.0) throw DomainError("seed operator is zero");
  if (std::abs(norm - 1.0) > 1e-8) {
    throw DomainError(fmt::format("seed must have unit Wightmann norm, got {:.12g}", norm));
  }
}

// Columns we may need: at most one per step plus the seed, and never more
// than the dimension of the space plus one.
Index basis_capacity(int max_steps, Index dim) {
  return std::min<Index>(static_cast<Index>(max_steps) + 1, dim + 1);
}

// Classical Gram-Schmidt sweep of u against the first k columns of q.
// Returns the Wightmann projections that were removed.
Vector project_out(const DenseMatrix& q, Index k, Vector& u, Index hdim) {
  Vector coeffs = q.leftCols(k).adjoint() * u;
  coeffs /= static_cast<double>(hdim);
  u.noalias() -= q.leftCols(k) * coeffs;
  return coeffs;
}

}  // namespace

SuperVector LanczosRun::basis_vector(Index n) const {
  if (!basis) throw StateError("Lanczos run did not retain its basis");
  if (n < 0 || n >= basis->cols()) throw RangeError(fmt::format("no basis vector {}", n));
  return SuperVector(n_sites, basis->col(n));
}

LanczosRun lanczos(const SuperOperator& l, const SuperVector& seed, const LanczosOptions& options) {
  validate_inputs(l, seed, options.max_steps, options.tol);
  const Index dim = l.dim();
  const Index hdim = l.hilbert_dim();

  LanczosRun run;
  run.n_sites = l.n_sites();
  run.reorthogonalized = options.full_reorth;

  const bool store_all = options.keep_basis || options.full_reorth;
  DenseMatrix q;
  if (store_all) {
    q.resize(dim, basis_capacity(options.max_steps, dim));
    q.col(0) = seed.entries();
  }
  Index stored = 1;

  Vector prev = Vector::Zero(dim);
  Vector cur = seed.entries();
  double b_prev = 0.0;

  for (int n = 1; n <= options.max_steps; ++n) {
    Vector u = l.apply(cur);
    if (n == 1) run.scale = wightmann_norm(u, hdim);
    if (b_prev != 0.0) u -= b_prev * prev;
    if (options.full_reorth) {
      project_out(q, stored, u, hdim);
      project_out(q, stored, u, hdim);
    }
    const double bn = wightmann_norm(u, hdim);
    run.final_norm = bn;
    if (bn <= options.tol * run.scale) {
      run.terminated = true;
      run.termination_index = n;
      break;
    }
    run.b.push_back(bn);
    Vector next = u / bn;

    // Neighbour orthogonality is the cheap diagnostic for the naive recurrence.
    double loss = std::abs(wightmann_inner(cur, next, hdim));
    if (n >= 2) loss = std::max(loss, std::abs(wightmann_inner(prev, next, hdim)));
    run.orthogonality_loss = std::max(run.orthogonality_loss, loss);

    if (store_all && stored < q.cols()) q.col(stored++) = next;
    prev = std::move(cur);
    cur = std::move(next);
    b_prev = bn;
  }

  if (options.keep_basis) {
    q.conservativeResize(Eigen::NoChange, stored);
    run.orthogonality_loss = std::max(run.orthogonality_loss, orthonormality_defect(q, hdim));
    run.basis = std::move(q);
  }
  run.orthogonality_lost = run.orthogonality_loss > options.orthogonality_threshold;
  return run;
}

cplx ArnoldiRun::h(Index row, Index col) const {
  if (col < 0 || col >= steps() || row < 0) return {0.0, 0.0};
  const Vector& c = columns[static_cast<std::size_t>(col)];
  return row < c.size() ? c(row) : cplx{0.0, 0.0};
}

DenseMatrix ArnoldiRun::hessenberg() const {
  const Index p = steps();
  const Index rows = terminated ? p : p + 1;
  DenseMatrix out = DenseMatrix::Zero(rows, p);
  for (Index j = 0; j < p; ++j) {
    const Vector& c = columns[static_cast<std::size_t>(j)];
    const Index len = std::min(c.size(), rows);
    out.col(j).head(len) = c.head(len);
  }
  return out;
}

DenseMatrix ArnoldiRun::square_hessenberg() const {
  const Index p = steps();
  return hessenberg().topRows(p);
}

SuperVector ArnoldiRun::basis_vector(Index n) const {
  if (n < 0 || n >= basis.cols()) throw RangeError(fmt::format("no basis vector {}", n));
  return SuperVector(n_sites, basis.col(n));
}

ArnoldiRun arnoldi(const SuperOperator& l, const SuperVector& seed, const ArnoldiOptions& options) {
  validate_inputs(l, seed, options.max_steps, options.tol);
  if (options.orthogonalization_passes < 1 || options.orthogonalization_passes > 3) {
    throw DomainError("orthogonalization_passes must be 1, 2 or 3");
  }
  const Index dim = l.dim();
  const Index hdim = l.hilbert_dim();

  ArnoldiRun run;
  run.n_sites = l.n_sites();
  run.basis.resize(dim, basis_capacity(options.max_steps, dim));
  run.basis.col(0) = seed.entries();
  Index stored = 1;

  for (int k = 1; k <= options.max_steps; ++k) {
    Vector u = l.apply(run.basis.col(k - 1));
    if (k == 1) run.scale = wightmann_norm(u, hdim);

    Vector coeffs = project_out(run.basis, k, u, hdim);
    for (int pass = 1; pass < options.orthogonalization_passes; ++pass) {
      coeffs += project_out(run.basis, k, u, hdim);
    }
    const double norm = wightmann_norm(u, hdim);
    run.final_norm = norm;
    if (norm <= options.tol * run.scale) {
      run.columns.push_back(std::move(coeffs));
      run.terminated = true;
      run.termination_index = k;
      break;
    }
    Vector column(k + 1);
    column.head(k) = coeffs;
    column(k) = norm;
    run.columns.push_back(std::move(column));
    run.basis.col(stored++) = u / norm;
    if (stored == run.basis.cols() && k < options.max_steps) {
      // Only reachable if the space is exhausted without the norm test firing.
      throw StateError(fmt::format("Arnoldi basis exceeded the space dimension {}", dim));
    }
  }
  if (stored < run.basis.cols()) run.basis.conservativeResize(Eigen::NoChange, stored);
  return run;
}

double check_recurrence_residual(const ArnoldiRun& run, const SuperOperator& l) {
  const Index p = run.steps();
  if (p == 0) return 0.0;
  const Index needed = run.terminated ? p : p + 1;
  if (run.basis.cols() < needed) throw StateError("Arnoldi run does not retain its basis");
  if (run.basis.rows() != l.dim()) throw ShapeError("basis and superoperator disagree");

  const Index hdim = l.hilbert_dim();
  // (p+1) x p including h_{p,p-1}; the extra row multiplies v_p.
  const DenseMatrix hess = run.hessenberg();
  const Index rows = hess.rows();
  double worst = 0.0;
  constexpr Index kBlock = 128;
  for (Index j0 = 0; j0 < p; j0 += kBlock) {
    const Index nb = std::min(kBlock, p - j0);
    const Index top = std::min(rows, j0 + nb + 1);
    DenseMatrix block(l.dim(), nb);
    for (Index j = 0; j < nb; ++j) block.col(j) = l.apply(Vector(run.basis.col(j0 + j)));
    block.noalias() -= run.basis.leftCols(top) * hess.block(0, j0, top, nb);
    for (Index j = 0; j < nb; ++j) {
      worst = std::max(worst, wightmann_norm(block.col(j), hdim));
    }
  }
  return worst;
}

double orthonormality_defect(const DenseMatrix& basis, Index hilbert_dim) {
  if (basis.cols() == 0) return 0.0;
  DenseMatrix gram = basis.adjoint() * basis;
  gram /= static_cast<double>(hilbert_dim);
  gram -= DenseMatrix::Identity(gram.rows(), gram.cols());
  return gram.cwiseAbs().maxCoeff();
}

}  // namespace opgrowth
