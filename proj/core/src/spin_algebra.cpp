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

#include "opgrowth/spin_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <fmt/format.h>
#include <unsupported/Eigen/KroneckerProduct>

namespace opgrowth {

namespace {

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

DenseMatrix single_site(Pauli which) {
  DenseMatrix m = DenseMatrix::Zero(2, 2);
  switch (which) {
    case Pauli::X:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Pauli::Y:
      m(0, 1) = -kI;
      m(1, 0) = kI;
      break;
    case Pauli::Z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    case Pauli::Plus:
      m(0, 1) = 1.0;
      break;
    case Pauli::Minus:
      m(1, 0) = 1.0;
      break;
  }
  return m;
}

void check_sites(int n_sites) {
  if (n_sites < 1 || n_sites > kMaxSites) {
    throw RangeError(fmt::format("n_sites must lie in [1, {}], got {}", kMaxSites, n_sites));
  }
}

}  // namespace

Pauli parse_pauli(std::string_view text) {
  const std::string t = lowercase(text);
  if (t == "x") return Pauli::X;
  if (t == "y") return Pauli::Y;
  if (t == "z") return Pauli::Z;
  if (t == "+" || t == "plus") return Pauli::Plus;
  if (t == "-" || t == "minus") return Pauli::Minus;
  throw DomainError(fmt::format("unknown Pauli label '{}'", text));
}

std::string_view to_string(Pauli p) {
  switch (p) {
    case Pauli::X: return "x";
    case Pauli::Y: return "y";
    case Pauli::Z: return "z";
    case Pauli::Plus: return "+";
    case Pauli::Minus: return "-";
  }
  return "?";
}

JumpMode parse_jump_mode(std::string_view text) {
  const std::string t = lowercase(text);
  if (t == "full") return JumpMode::Full;
  if (t == "boundary_only" || t == "boundary") return JumpMode::BoundaryOnly;
  if (t == "dephasing_only" || t == "dephasing") return JumpMode::DephasingOnly;
  if (t == "closed") return JumpMode::Closed;
  throw DomainError(fmt::format("unknown jump mode '{}'", text));
}

std::string_view to_string(JumpMode mode) {
  switch (mode) {
    case JumpMode::Full: return "full";
    case JumpMode::BoundaryOnly: return "boundary_only";
    case JumpMode::DephasingOnly: return "dephasing_only";
    case JumpMode::Closed: return "closed";
  }
  return "?";
}

SpinOperator::SpinOperator(int n_sites, DenseMatrix matrix, std::string label)
    : n_sites_(n_sites), matrix_(std::move(matrix)), label_(std::move(label)) {
  check_sites(n_sites_);
  const Index d = hilbert_dim(n_sites_);
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw ShapeError(fmt::format("operator on {} sites must be {}x{}, got {}x{}", n_sites_, d, d,
                                 matrix_.rows(), matrix_.cols()));
  }
}

double SpinOperator::hermiticity_defect() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

SpinOperator SpinOperator::adjoint() const {
  return SpinOperator(n_sites_, matrix_.adjoint(), label_ + "^dag");
}

SpinOperator SpinOperator::scaled(cplx factor, std::string label) const {
  return SpinOperator(n_sites_, factor * matrix_, std::move(label));
}

SpinOperator identity_operator(int n_sites) {
  check_sites(n_sites);
  const Index d = hilbert_dim(n_sites);
  return SpinOperator(n_sites, DenseMatrix::Identity(d, d), "I");
}

SpinOperator site_operator(int n_sites, int site, Pauli which) {
  check_sites(n_sites);
  if (site < 1 || site > n_sites) {
    throw RangeError(fmt::format("site {} outside chain of {} sites", site, n_sites));
  }
  const DenseMatrix left = DenseMatrix::Identity(hilbert_dim(site - 1), hilbert_dim(site - 1));
  const DenseMatrix right =
      DenseMatrix::Identity(hilbert_dim(n_sites - site), hilbert_dim(n_sites - site));
  DenseMatrix m = Eigen::kroneckerProduct(left, Eigen::kroneckerProduct(single_site(which), right).eval());
  return SpinOperator(n_sites, std::move(m), fmt::format("s{}_{}", to_string(which), site));
}

SpinOperator build_tfim(int n_sites, double g, double h) {
  check_sites(n_sites);
  const Index d = hilbert_dim(n_sites);
  DenseMatrix m = DenseMatrix::Zero(d, d);
  for (int j = 1; j < n_sites; ++j) {
    m -= site_operator(n_sites, j, Pauli::Z).matrix() *
         site_operator(n_sites, j + 1, Pauli::Z).matrix();
  }
  for (int j = 1; j <= n_sites; ++j) {
    m -= g * site_operator(n_sites, j, Pauli::X).matrix();
    m -= h * site_operator(n_sites, j, Pauli::Z).matrix();
  }
  return SpinOperator(n_sites, std::move(m), fmt::format("tfim(g={},h={})", g, h));
}

std::vector<SpinOperator> build_jump_operators(int n_sites, double alpha, double gamma,
                                               JumpMode mode) {
  check_sites(n_sites);
  if (!(alpha >= 0.0) || !(gamma >= 0.0)) {
    throw DomainError(
        fmt::format("dissipation amplitudes must be >= 0 (alpha={}, gamma={})", alpha, gamma));
  }
  const bool damping = (mode == JumpMode::Full || mode == JumpMode::BoundaryOnly) && alpha > 0.0;
  const bool dephasing =
      (mode == JumpMode::Full || mode == JumpMode::DephasingOnly) && gamma > 0.0;

  std::vector<SpinOperator> jumps;
  if (damping) {
    const double amp = std::sqrt(alpha);
    for (int site : {1, n_sites}) {
      for (Pauli p : {Pauli::Plus, Pauli::Minus}) {
        const SpinOperator s = site_operator(n_sites, site, p);
        jumps.push_back(s.scaled(amp, fmt::format("sqrt(alpha) {}", s.label())));
      }
    }
  }
  if (dephasing) {
    const double amp = std::sqrt(gamma);
    for (int i = 1; i <= n_sites; ++i) {
      const SpinOperator s = site_operator(n_sites, i, Pauli::Z);
      jumps.push_back(s.scaled(amp, fmt::format("sqrt(gamma) {}", s.label())));
    }
  }
  return jumps;
}

}  // namespace opgrowth
