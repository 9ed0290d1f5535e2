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

#include "opgrowth/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

namespace opgrowth {

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

Index packed_rows(const ArnoldiRun& run, Index col) {
  return run.columns[static_cast<std::size_t>(col)].size();
}

WavefunctionSeries project_evolution(const SuperOperator& l, const DenseMatrix& basis,
                                     const std::vector<double>& times, PhaseConvention convention,
                                     const ExpmOptions& expm) {
  if (basis.cols() == 0) throw StateError("run has no basis vectors");
  if (basis.rows() != l.dim()) throw ShapeError("basis and superoperator disagree");
  for (double t : times) {
    if (!std::isfinite(t)) throw DomainError("time grid must be finite");
  }
  const Index hdim = l.hilbert_dim();
  const Index k = basis.cols();

  WavefunctionSeries out;
  out.times = times;
  out.convention = convention;
  out.phi.resize(k, static_cast<Index>(times.size()));

  // i^{-n} cycles through 1, -i, -1, i.
  const cplx phases[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};

  Vector state = basis.col(0);
  double t_prev = 0.0;
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    state = expm_multiply(l.matrix(), kI, times[ti] - t_prev, state, expm);
    t_prev = times[ti];
    Vector proj = basis.adjoint() * state;
    proj /= static_cast<double>(hdim);
    if (convention == PhaseConvention::LanczosPhase) {
      for (Index n = 0; n < k; ++n) proj(n) *= phases[n % 4];
    }
    double norm = 0.0, complexity = 0.0;
    for (Index n = 0; n < k; ++n) {
      const double p = std::norm(proj(n));
      norm += p;
      complexity += static_cast<double>(n) * p;
    }
    out.phi.col(static_cast<Index>(ti)) = proj;
    out.norm.push_back(norm);
    out.complexity.push_back(complexity);
  }
  return out;
}

}  // namespace

std::string_view to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::LanczosB: return "lanczos_b";
    case SeriesKind::ArnoldiSubdiag: return "arnoldi_subdiag";
    case SeriesKind::ArnoldiSuperdiag: return "arnoldi_superdiag";
    case SeriesKind::ArnoldiDiagAbs: return "arnoldi_diag_abs";
    case SeriesKind::SubdiagAsymmetry: return "subdiag_asymmetry";
  }
  return "?";
}

SeriesKind parse_series_kind(std::string_view text) {
  for (SeriesKind k : {SeriesKind::LanczosB, SeriesKind::ArnoldiSubdiag,
                       SeriesKind::ArnoldiSuperdiag, SeriesKind::ArnoldiDiagAbs,
                       SeriesKind::SubdiagAsymmetry}) {
    if (to_string(k) == text) return k;
  }
  throw DomainError(fmt::format("unknown series kind '{}'", text));
}

std::string_view to_string(GrowthLabel label) {
  switch (label) {
    case GrowthLabel::Linear: return "linear";
    case GrowthLabel::Sublinear: return "sublinear";
    case GrowthLabel::Indeterminate: return "indeterminate";
  }
  return "?";
}

std::string_view to_string(PhaseConvention c) {
  return c == PhaseConvention::LanczosPhase ? "lanczos_phase" : "raw_projection";
}

double CoefficientSeries::at(int n) const {
  if (!contains(n)) throw RangeError(fmt::format("series {} has no index {}", to_string(kind), n));
  return values[static_cast<std::size_t>(n - first_index)];
}

CoefficientSeries extract_series(const LanczosRun& run, SeriesKind kind) {
  if (kind != SeriesKind::LanczosB) {
    throw StateError(fmt::format("a Lanczos run has no {} series", to_string(kind)));
  }
  CoefficientSeries out;
  out.kind = kind;
  out.first_index = 1;
  out.values = run.b;
  return out;
}

CoefficientSeries extract_series(const ArnoldiRun& run, SeriesKind kind) {
  CoefficientSeries out;
  out.kind = kind;
  const Index p = run.steps();
  switch (kind) {
    case SeriesKind::LanczosB:
      throw StateError("an Arnoldi run has no lanczos_b series");
    case SeriesKind::ArnoldiSubdiag:
      out.first_index = 1;
      for (Index j = 0; j < p && packed_rows(run, j) > j + 1; ++j) {
        out.values.push_back(run.h(j + 1, j).real());
      }
      break;
    case SeriesKind::ArnoldiSuperdiag:
      out.first_index = 1;
      for (Index n = 1; n < p; ++n) out.values.push_back(run.h(n - 1, n).real());
      break;
    case SeriesKind::ArnoldiDiagAbs:
      out.first_index = 0;
      for (Index n = 0; n < p; ++n) out.values.push_back(std::abs(run.h(n, n)));
      break;
    case SeriesKind::SubdiagAsymmetry:
      out.first_index = 1;
      for (Index n = 1; n < p && packed_rows(run, n - 1) > n; ++n) {
        out.values.push_back(std::abs(run.h(n, n - 1) - run.h(n - 1, n)));
      }
      break;
  }
  return out;
}

CoefficientSeries fluctuation_average(const CoefficientSeries& series, int s, int n_start) {
  if (series.empty()) throw DomainError("cannot smooth an empty series");
  if (s < 1) throw DomainError(fmt::format("smoothing window must be >= 1, got {}", s));
  if (n_start < 1) throw DomainError(fmt::format("smoothing start must be >= 1, got {}", n_start));
  CoefficientSeries out = series;
  out.smoothing = Smoothing{s, n_start};
  const int first = series.first_index;
  const int last = series.last_index();
  for (int n = std::max(n_start, first); n <= last; ++n) {
    const int lo = std::max(first, n - s);
    const int hi = std::min(last, n + s);
    double sum = 0.0;
    for (int m = lo; m <= hi; ++m) sum += series.at(m);
    out.values[static_cast<std::size_t>(n - first)] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

GrowthFit classify_growth(const CoefficientSeries& series, int n_lo, int n_hi,
                          const GrowthThresholds& thresholds) {
  if (n_lo < 1) throw DomainError("growth window must start at n >= 1");
  std::vector<double> xs, ys;
  for (int n = std::max(n_lo, series.first_index); n <= std::min(n_hi, series.last_index()); ++n) {
    xs.push_back(static_cast<double>(n));
    ys.push_back(series.at(n));
  }
  if (xs.size() < 8) {
    throw DomainError(fmt::format("growth window [{}, {}] holds {} points of {}, need >= 8", n_lo,
                                  n_hi, xs.size(), to_string(series.kind)));
  }
  const LineFit lin = least_squares(xs, ys);
  GrowthFit fit;
  fit.slope = lin.slope;
  fit.intercept = lin.intercept;
  fit.fit_quality = lin.r2;

  if (std::any_of(ys.begin(), ys.end(), [](double v) { return !(v > 0.0); })) {
    fit.beta = std::nan("");
    fit.loglog_quality = std::nan("");
    fit.label = GrowthLabel::Indeterminate;
    return fit;
  }
  std::vector<double> lx(xs.size()), ly(ys.size());
  std::transform(xs.begin(), xs.end(), lx.begin(), [](double v) { return std::log(v); });
  std::transform(ys.begin(), ys.end(), ly.begin(), [](double v) { return std::log(v); });
  const LineFit loglog = least_squares(lx, ly);
  fit.beta = loglog.slope;
  fit.loglog_quality = loglog.r2;

  if (fit.beta >= thresholds.beta_linear && fit.fit_quality >= thresholds.r2_linear) {
    fit.label = GrowthLabel::Linear;
  } else if (fit.beta <= thresholds.beta_sublinear) {
    fit.label = GrowthLabel::Sublinear;
  } else {
    fit.label = GrowthLabel::Indeterminate;
  }
  return fit;
}

std::vector<cplx> ritz_values(const ArnoldiRun& run, Index max_order) {
  if (max_order < 0) throw DomainError("max_order must be >= 0");
  DenseMatrix h = run.square_hessenberg();
  if (max_order > 0 && max_order < h.rows()) {
    h = h.topLeftCorner(max_order, max_order).eval();
  }
  if (h.rows() == 0) return {};
  Eigen::ComplexEigenSolver<DenseMatrix> solver(h, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw StateError("Hessenberg eigensolver did not converge");
  std::vector<cplx> out(solver.eigenvalues().data(),
                        solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.begin(), out.end(), [](const cplx& a, const cplx& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

std::vector<double> moments_bn(const SuperOperator& l, const SuperVector& seed, int count,
                               double tol) {
  if (count < 1) throw DomainError(fmt::format("count must be >= 1, got {}", count));
  if (seed.n_sites() != l.n_sites()) throw ShapeError("seed and superoperator disagree");
  const double lscale = std::max(1.0, l.frobenius_norm());
  if (!l.is_hermitian(1e-12 * lscale)) {
    throw DomainError("moment method requires a Hermitian superoperator");
  }
  const Index hdim = l.hilbert_dim();

  // mu_2k = (L^k O | L^k O) for Hermitian L.
  std::vector<long double> mu;
  Vector v = seed.entries();
  for (int k = 0; k <= count; ++k) {
    if (k > 0) v = l.apply(v);
    const double nrm = wightmann_norm(v, hdim);
    mu.push_back(static_cast<long double>(nrm) * nrm);
  }
  if (mu[0] <= 0.0L) throw DomainError("seed operator is zero");

  // M_2k^(n) = M_2k^(n-1) / b_{n-1}^2 - M_{2k-2}^(n-2) / b_{n-2}^2 with
  // M^(0) = mu, M^(-1) = 0, b_{-1} = b_0 = 1 and b_n^2 = M_2n^(n).
  const std::size_t kmax = static_cast<std::size_t>(count);
  std::vector<long double> prev2(kmax + 1, 0.0L);  // M^(n-2)
  std::vector<long double> prev(kmax + 1);         // M^(n-1)
  for (std::size_t k = 0; k <= kmax; ++k) prev[k] = mu[k] / mu[0];
  long double b2_prev = 1.0L, b2_prev2 = 1.0L;

  std::vector<double> b;
  if (prev[1] <= 0.0L) return b;  // conserved seed
  const long double cutoff = static_cast<long double>(tol) * tol * prev[1];
  for (std::size_t n = 1; n <= kmax; ++n) {
    std::vector<long double> cur(kmax + 1, 0.0L);
    for (std::size_t k = n; k <= kmax; ++k) {
      cur[k] = prev[k] / b2_prev - prev2[k - 1] / b2_prev2;
    }
    const long double b2 = cur[n];
    if (!(b2 > cutoff)) break;
    b.push_back(static_cast<double>(std::sqrt(b2)));
    prev2 = std::move(prev);
    prev = std::move(cur);
    b2_prev2 = b2_prev;
    b2_prev = b2;
  }
  return b;
}

WavefunctionSeries wavefunctions(const SuperOperator& l, const LanczosRun& run,
                                 const std::vector<double>& times, const ExpmOptions& expm) {
  if (!run.basis) throw StateError("Lanczos run did not retain its basis");
  return project_evolution(l, *run.basis, times, PhaseConvention::LanczosPhase, expm);
}

WavefunctionSeries wavefunctions(const SuperOperator& l, const ArnoldiRun& run,
                                 const std::vector<double>& times, const ExpmOptions& expm) {
  return project_evolution(l, run.basis, times, PhaseConvention::RawProjection, expm);
}

}  // namespace opgrowth
