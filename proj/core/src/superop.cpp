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

#include "opgrowth/superop.hpp"

#include <cstdio>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <unsupported/Eigen/KroneckerProduct>

namespace opgrowth {

namespace {

using ColSparse = Eigen::SparseMatrix<cplx>;

ColSparse to_sparse(const DenseMatrix& m) { return m.sparseView(0.0, 0.0); }

ColSparse kron(const ColSparse& a, const ColSparse& b) {
  ColSparse out;
  out = Eigen::kroneckerProduct(a, b);
  return out;
}

double max_abs(const SparseMatrix& m) {
  double out = 0.0;
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      out = std::max(out, std::abs(it.value()));
    }
  }
  return out;
}

void check_hamiltonian(const SpinOperator& h, HermiticityCheck check) {
  if (check == HermiticityCheck::Ignore) return;
  const double defect = h.hermiticity_defect();
  const double scale = std::max(1.0, h.matrix().cwiseAbs().maxCoeff());
  if (defect <= 1e-12 * scale) return;
  const std::string msg =
      fmt::format("Hamiltonian '{}' is not Hermitian (defect {:.3e})", h.label(), defect);
  if (check == HermiticityCheck::Throw) throw DomainError(msg);
  fmt::print(stderr, "warning: {}\n", msg);
}

}  // namespace

SuperVector::SuperVector(int n_sites, Vector entries)
    : n_sites_(n_sites), entries_(std::move(entries)) {
  if (n_sites_ < 1 || n_sites_ > kMaxSites) {
    throw RangeError(fmt::format("n_sites must lie in [1, {}], got {}", kMaxSites, n_sites_));
  }
  if (entries_.size() != liouville_dim(n_sites_)) {
    throw ShapeError(fmt::format("super-vector on {} sites must have length {}, got {}", n_sites_,
                                 liouville_dim(n_sites_), entries_.size()));
  }
}

SuperVector SuperVector::zero(int n_sites) {
  return SuperVector(n_sites, Vector::Zero(liouville_dim(n_sites)));
}

double SuperVector::norm() const { return wightmann_norm(entries_, hilbert_dim()); }

SuperVector SuperVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw DomainError("cannot normalize the zero super-vector");
  return SuperVector(n_sites_, entries_ / n);
}

SuperVector vectorize_operator(const SpinOperator& op) {
  const DenseMatrix& m = op.matrix();
  return SuperVector(op.n_sites(), Eigen::Map<const Vector>(m.data(), m.size()));
}

SpinOperator devectorize(const SuperVector& v, std::string label) {
  const Index d = v.hilbert_dim();
  DenseMatrix m = Eigen::Map<const DenseMatrix>(v.entries().data(), d, d);
  return SpinOperator(v.n_sites(), std::move(m), std::move(label));
}

cplx wightmann_inner(const SuperVector& a, const SuperVector& b) {
  if (a.n_sites() != b.n_sites()) {
    throw ShapeError(fmt::format("inner product between {}-site and {}-site vectors",
                                 a.n_sites(), b.n_sites()));
  }
  return wightmann_inner(a.entries(), b.entries(), a.hilbert_dim());
}

SuperOperator::SuperOperator(int n_sites, SparseMatrix matrix)
    : n_sites_(n_sites), matrix_(std::move(matrix)) {
  const Index d2 = liouville_dim(n_sites_);
  if (matrix_.rows() != d2 || matrix_.cols() != d2) {
    throw ShapeError(fmt::format("superoperator on {} sites must be {}x{}, got {}x{}", n_sites_,
                                 d2, d2, matrix_.rows(), matrix_.cols()));
  }
  matrix_.makeCompressed();
}

Vector SuperOperator::apply(const Vector& v) const {
  if (v.size() != dim()) {
    throw ShapeError(fmt::format("cannot apply {}x{} superoperator to length-{} vector", dim(),
                                 dim(), v.size()));
  }
  Vector out(dim());
  out.noalias() = matrix_ * v;
  return out;
}

SuperVector SuperOperator::apply(const SuperVector& v) const {
  if (v.n_sites() != n_sites_) {
    throw ShapeError("superoperator and super-vector disagree on n_sites");
  }
  return SuperVector(n_sites_, apply(v.entries()));
}

double SuperOperator::hermiticity_defect() const {
  const SparseMatrix adj = matrix_.adjoint();
  return max_abs(SparseMatrix(matrix_ - adj));
}

SuperOperator build_liouvillian(const SpinOperator& h, HermiticityCheck check) {
  return build_lindbladian(h, {}, check);
}

SuperOperator build_lindbladian(const SpinOperator& h, std::span<const SpinOperator> jumps,
                                HermiticityCheck check) {
  check_hamiltonian(h, check);
  const int n = h.n_sites();
  const Index d = h.dim();
  ColSparse id(d, d);
  id.setIdentity();

  const ColSparse hs = to_sparse(h.matrix());
  const ColSparse ht = to_sparse(h.matrix().transpose());
  ColSparse total = kron(id, hs) - kron(ht, id);

  for (const SpinOperator& jump : jumps) {
    if (jump.n_sites() != n) {
      throw ShapeError(fmt::format("jump operator '{}' acts on {} sites, Hamiltonian on {}",
                                   jump.label(), jump.n_sites(), n));
    }
    const DenseMatrix& l = jump.matrix();
    const DenseMatrix ldag_l = l.adjoint() * l;
    const ColSparse term = kron(id, to_sparse(ldag_l)) + kron(to_sparse(ldag_l.transpose()), id) -
                           2.0 * kron(to_sparse(l.transpose()), to_sparse(l.adjoint()));
    total += (0.5 * kI) * term;
  }
  total.prune([](Index, Index, const cplx& v) { return v != cplx(0.0, 0.0); });
  return SuperOperator(n, SparseMatrix(total));
}

HermitianSplit hermitian_split(const SuperOperator& l) {
  const SparseMatrix adj = l.matrix().adjoint();
  SparseMatrix c = 0.5 * (l.matrix() + adj);
  SparseMatrix dt = (-0.5 * kI) * (l.matrix() - adj);
  return {SuperOperator(l.n_sites(), std::move(c)), SuperOperator(l.n_sites(), std::move(dt))};
}

void write_triplets(const SuperOperator& l, std::ostream& out) {
  const SparseMatrix& m = l.matrix();
  for (Index row = 0; row < m.outerSize(); ++row) {
    for (SparseMatrix::InnerIterator it(m, row); it; ++it) {
      fmt::print(out, "{},{},{:.16e},{:.16e}\n", it.row(), it.col(), it.value().real(),
                 it.value().imag());
    }
  }
}

}  // namespace opgrowth
