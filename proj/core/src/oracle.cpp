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

#include "opgrowth/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "opgrowth/analysis.hpp"
#include "opgrowth/config.hpp"
#include "opgrowth/spin_algebra.hpp"
#include "opgrowth/superop.hpp"

namespace opgrowth {

namespace {

constexpr int kRandomOperators = 20;

DenseMatrix random_matrix(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  DenseMatrix m(d, d);
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) m(i, j) = cplx(gauss(rng), gauss(rng));
  }
  return m;
}

// [H, X] - i sum_k (L_k^dag X L_k - {L_k^dag L_k, X} / 2) with plain matrix products.
DenseMatrix heisenberg_action(const DenseMatrix& h, const std::vector<SpinOperator>& jumps,
                              const DenseMatrix& x) {
  DenseMatrix out = h * x - x * h;
  for (const auto& jump : jumps) {
    const DenseMatrix& l = jump.matrix();
    const DenseMatrix ld = l.adjoint();
    const DenseMatrix ldl = ld * l;
    out -= kI * (ld * x * l - 0.5 * (ldl * x + x * ldl));
  }
  return out;
}

std::vector<cplx> dense_eigenvalues(const DenseMatrix& m) {
  Eigen::ComplexEigenSolver<DenseMatrix> solver(m, false);
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size()};
}

// Largest distance when each Ritz value claims its nearest unclaimed reference value.
double unique_match_distance(const std::vector<cplx>& ritz, std::vector<cplx> reference) {
  double worst = 0.0;
  for (const cplx& z : ritz) {
    if (reference.empty()) return std::numeric_limits<double>::infinity();
    auto best = std::min_element(reference.begin(), reference.end(), [&](cplx a, cplx b) {
      return std::abs(a - z) < std::abs(b - z);
    });
    worst = std::max(worst, std::abs(*best - z));
    reference.erase(best);
  }
  return worst;
}

double nearest_distance(const std::vector<cplx>& values, const std::vector<cplx>& reference) {
  double worst = 0.0;
  for (const cplx& z : values) {
    double best = std::numeric_limits<double>::infinity();
    for (const cplx& r : reference) best = std::min(best, std::abs(r - z));
    worst = std::max(worst, best);
  }
  return worst;
}

OracleCheck make_check(std::string name, double value, double threshold) {
  return {std::move(name), std::isfinite(value) && value < threshold, value, threshold};
}

}  // namespace

std::vector<OracleCheck> run_oracle_battery(int n, std::uint64_t seed) {
  if (n < 1 || n > kMaxOracleSites) {
    throw DomainError(fmt::format("oracle battery supports 1 <= N <= {}, got {}", kMaxOracleSites, n));
  }
  std::vector<OracleCheck> checks;
  std::mt19937_64 rng(seed);
  const double alpha = 0.1, gamma = 0.1;
  const SpinOperator h = build_tfim(n, kChaoticG, kChaoticH);
  const Index hdim = hilbert_dim(n);
  const int full_dim = static_cast<int>(liouville_dim(n));
  const SuperVector seed_vec =
      vectorize_operator(site_operator(n, std::min(3, n), Pauli::Z)).normalized();

  // Vectorized action against direct matrix products, per jump mode.
  for (JumpMode mode :
       {JumpMode::Closed, JumpMode::Full, JumpMode::BoundaryOnly, JumpMode::DephasingOnly}) {
    const auto jumps = build_jump_operators(n, alpha, gamma, mode);
    const SuperOperator l = build_lindbladian(h, jumps);
    double worst = 0.0;
    for (int r = 0; r < kRandomOperators; ++r) {
      const DenseMatrix x = random_matrix(hdim, rng);
      const SpinOperator xo(n, x, "X");
      const Vector lhs = l.apply(vectorize_operator(xo).entries());
      const Vector rhs = vectorize_operator(SpinOperator(n, heisenberg_action(h.matrix(), jumps, x), "LX")).entries();
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, x.cwiseAbs().maxCoeff()));
    }
    checks.push_back(make_check(fmt::format("action_{}", to_string(mode)), worst, 1e-11));
  }

  const SuperOperator closed = build_liouvillian(h);
  const SuperOperator open = build_lindbladian(h, build_jump_operators(n, alpha, gamma, JumpMode::Full));
  checks.push_back(make_check("liouvillian_hermitian", closed.hermiticity_defect(),
                              1e-12 * std::max(1.0, closed.frobenius_norm())));

  // Hermitian limit: Arnoldi on a Hermitian L reduces to reorthogonalized Lanczos.
  {
    LanczosOptions lo;
    lo.max_steps = std::min(60, full_dim);
    lo.full_reorth = true;
    const LanczosRun lr = lanczos(closed, seed_vec, lo);
    ArnoldiOptions ao;
    ao.max_steps = lo.max_steps;
    const ArnoldiRun ar = arnoldi(closed, seed_vec, ao);
    double worst = std::abs(static_cast<double>(lr.krylov_dimension() - ar.krylov_dimension()));
    for (Index k = 0; k < ar.steps(); ++k) {
      worst = std::max(worst, std::abs(ar.h(k, k)));
      if (k + 1 < ar.krylov_dimension() && static_cast<std::size_t>(k) < lr.b.size()) {
        worst = std::max(worst, std::abs(ar.h(k + 1, k) - lr.b[static_cast<std::size_t>(k)]));
      }
    }
    checks.push_back(make_check("hermitian_limit", worst, 1e-8));
  }

  // Full-dimension Arnoldi: Ritz values against dense spectra.
  ArnoldiOptions full;
  full.max_steps = full_dim;
  {
    const ArnoldiRun ar = arnoldi(closed, seed_vec, full);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h.matrix());
    std::vector<cplx> gaps;
    for (Index i = 0; i < hdim; ++i) {
      for (Index j = 0; j < hdim; ++j) gaps.emplace_back(es.eigenvalues()(i) - es.eigenvalues()(j), 0.0);
    }
    const auto ritz = ritz_values(ar);
    checks.push_back(make_check("ritz_closed_energy_gaps", nearest_distance(ritz, gaps), 1e-8));
    checks.push_back(make_check("ritz_closed_dense",
                                unique_match_distance(ritz, dense_eigenvalues(closed.dense())), 1e-8));
  }
  {
    const ArnoldiRun ar = arnoldi(open, seed_vec, full);
    checks.push_back(make_check("ritz_open_dense",
                                unique_match_distance(ritz_values(ar), dense_eigenvalues(open.dense())),
                                1e-8));
    checks.push_back(make_check("recurrence_residual", check_recurrence_residual(ar, open), 1e-8));
    checks.push_back(make_check("orthonormality", orthonormality_defect(ar.basis, hdim), 1e-8));
  }

  // Moments against Lanczos on the Hermitian side.
  {
    LanczosOptions lo;
    lo.max_steps = std::min(10, full_dim);
    lo.full_reorth = true;
    const LanczosRun lr = lanczos(closed, seed_vec, lo);
    const auto mb = moments_bn(closed, seed_vec, static_cast<int>(lr.b.size()));
    double worst = mb.size() == lr.b.size() ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < std::min(mb.size(), lr.b.size()); ++k) {
      worst = std::max(worst, std::abs(mb[k] - lr.b[k]));
    }
    checks.push_back(make_check("moments_vs_lanczos", worst, 1e-6));
  }

  // Time evolution against the dense exponential.
  {
    const double t = 0.7;
    const DenseMatrix prop = (kI * t * open.dense()).exp();
    const Vector ref = prop * seed_vec.entries();
    const Vector got = expm_multiply(open.matrix(), kI, t, seed_vec.entries());
    checks.push_back(make_check("expm_vs_dense", (got - ref).norm() / ref.norm(), 1e-9));
  }

  // Closed-dynamics wavefunctions stay normalized over a full Krylov basis.
  {
    LanczosOptions lo;
    lo.max_steps = full_dim;
    lo.full_reorth = true;
    lo.keep_basis = true;
    const LanczosRun lr = lanczos(closed, seed_vec, lo);
    TimeGrid grid;
    const auto wf = wavefunctions(closed, lr, grid.values());
    double worst = 0.0;
    for (double v : wf.norm) worst = std::max(worst, std::abs(v - 1.0));
    checks.push_back(make_check("wavefunction_unitarity", worst, 1e-8));
  }

  // Two-level case: H = sigma^z, O_0 = sigma^x gives phi_0 = cos 2t, phi_1 = sin 2t.
  {
    const SuperOperator l1 = build_liouvillian(site_operator(1, 1, Pauli::Z));
    const SuperVector x = vectorize_operator(site_operator(1, 1, Pauli::X));
    LanczosOptions lo;
    lo.max_steps = 4;
    lo.keep_basis = true;
    const LanczosRun lr = lanczos(l1, x, lo);
    TimeGrid grid;
    const auto wf = wavefunctions(l1, lr, grid.values());
    double worst = wf.phi.rows() == 2 ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < wf.times.size() && wf.phi.rows() == 2; ++k) {
      const double tk = wf.times[k];
      const auto c = static_cast<Index>(k);
      worst = std::max(worst, std::abs(wf.phi(0, c) - cplx(std::cos(2 * tk), 0.0)));
      worst = std::max(worst, std::abs(wf.phi(1, c) - cplx(std::sin(2 * tk), 0.0)));
    }
    checks.push_back(make_check("two_level_analytic", worst, 1e-10));
  }

  return checks;
}

}  // namespace opgrowth
