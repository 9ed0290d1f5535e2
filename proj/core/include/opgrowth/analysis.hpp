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

#include <optional>
#include <string_view>
#include <vector>

#include "opgrowth/common.hpp"
#include "opgrowth/expm.hpp"
#include "opgrowth/krylov.hpp"
#include "opgrowth/superop.hpp"

namespace opgrowth {

enum class SeriesKind {
  LanczosB,          // b_n, n >= 1
  ArnoldiSubdiag,    // h_{n,n-1}, n >= 1
  ArnoldiSuperdiag,  // h_{n-1,n}, n >= 1 (real part; see below)
  ArnoldiDiagAbs,    // |h_{n,n}|, n >= 0
  SubdiagAsymmetry,  // |h_{n,n-1} - h_{n-1,n}|, n >= 1
};

std::string_view to_string(SeriesKind kind);
SeriesKind parse_series_kind(std::string_view text);

struct Smoothing {
  int window = 5;   // s
  int n_start = 41;

  bool operator==(const Smoothing&) const = default;
};

struct CoefficientSeries {
  SeriesKind kind = SeriesKind::LanczosB;
  int first_index = 1;  // n of values[0]
  std::vector<double> values;
  std::optional<Smoothing> smoothing;

  int last_index() const { return first_index + static_cast<int>(values.size()) - 1; }
  bool contains(int n) const { return n >= first_index && n <= last_index(); }
  double at(int n) const;
  bool empty() const { return values.empty(); }
};

// The superdiagonal h_{n-1,n} is complex in general; the series stores its
// real part, which is what the subdiagonal (a real norm) is compared with.
CoefficientSeries extract_series(const LanczosRun& run, SeriesKind kind);
CoefficientSeries extract_series(const ArnoldiRun& run, SeriesKind kind);

// For n >= n_start, value_n becomes the mean of the raw values over
// [max(first, n - s), min(last, n + s)]; earlier entries pass through.
CoefficientSeries fluctuation_average(const CoefficientSeries& series, int s, int n_start);

enum class GrowthLabel { Linear, Sublinear, Indeterminate };
std::string_view to_string(GrowthLabel label);

struct GrowthThresholds {
  double beta_linear = 0.9;
  double r2_linear = 0.98;
  double beta_sublinear = 0.75;

  bool operator==(const GrowthThresholds&) const = default;
};

struct GrowthFit {
  double slope = 0.0;
  double intercept = 0.0;
  double fit_quality = 0.0;  // R^2 of the linear fit
  double beta = 0.0;         // exponent of the log-log fit value = c n^beta
  double loglog_quality = 0.0;
  GrowthLabel label = GrowthLabel::Indeterminate;
};

// Window is the inclusive n range [n_lo, n_hi] and must hold >= 8 points of
// the series. Non-positive values make the power-law fit undefined, which
// yields an Indeterminate label.
GrowthFit classify_growth(const CoefficientSeries& series, int n_lo, int n_hi,
                          const GrowthThresholds& thresholds = {});

// Eigenvalues of the square Hessenberg block, ordered by real then imaginary part.
// A positive max_order uses the leading max_order x max_order block instead,
// i.e. the Ritz values after that many steps.
std::vector<cplx> ritz_values(const ArnoldiRun& run, Index max_order = 0);

// b_1..b_count from the moments mu_2k = (O|L^2k|O) of a Hermitian L.
// Stops early (shorter result) when the moment sequence certifies K is reached.
std::vector<double> moments_bn(const SuperOperator& l, const SuperVector& seed, int count,
                               double tol = 1e-10);

enum class PhaseConvention {
  LanczosPhase,   // phi_n = i^{-n} (O_n|O(t))
  RawProjection,  // phi_n = <v_n|O(t)>, used for Arnoldi bases
};
std::string_view to_string(PhaseConvention c);

struct WavefunctionSeries {
  std::vector<double> times;
  DenseMatrix phi;  // rows n, columns t
  std::vector<double> complexity;  // K(t) = sum_n n |phi_n|^2
  std::vector<double> norm;        // sum_n |phi_n|^2
  PhaseConvention convention = PhaseConvention::LanczosPhase;
};

// |O(t)) = exp(i L t)|O_0), projected on the run's basis.
WavefunctionSeries wavefunctions(const SuperOperator& l, const LanczosRun& run,
                                 const std::vector<double>& times, const ExpmOptions& expm = {});
WavefunctionSeries wavefunctions(const SuperOperator& l, const ArnoldiRun& run,
                                 const std::vector<double>& times, const ExpmOptions& expm = {});

}  // namespace opgrowth
