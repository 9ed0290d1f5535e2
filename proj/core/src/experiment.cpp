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

#include "opgrowth/experiment.hpp"

#include <chrono>

#include <fmt/format.h>

#ifndef OPGROWTH_VERSION
#define OPGROWTH_VERSION "0.0.0"
#endif

namespace opgrowth {

namespace {

constexpr SeriesKind kArnoldiKinds[] = {
    SeriesKind::ArnoldiSubdiag,
    SeriesKind::ArnoldiSuperdiag,
    SeriesKind::ArnoldiDiagAbs,
    SeriesKind::SubdiagAsymmetry,
};

bool fits_growth(SeriesKind kind) {
  return kind == SeriesKind::LanczosB || kind == SeriesKind::ArnoldiSubdiag;
}

SeriesRecord make_record(CoefficientSeries raw, const ExperimentConfig& cfg) {
  SeriesRecord rec;
  rec.smoothed = raw.empty() ? raw
                             : fluctuation_average(raw, cfg.smoothing.window, cfg.smoothing.n_start);
  if (fits_growth(raw.kind) && raw.contains(cfg.growth_lo) && raw.contains(cfg.growth_hi)) {
    rec.growth = classify_growth(raw, cfg.growth_lo, cfg.growth_hi, cfg.thresholds);
  }
  rec.raw = std::move(raw);
  return rec;
}

ErrorCategory categorize(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return ErrorCategory::Config;
  if (dynamic_cast<const IoError*>(&e)) return ErrorCategory::Io;
  if (dynamic_cast<const StateError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const ShapeError*>(&e) || dynamic_cast<const RangeError*>(&e)) {
    return ErrorCategory::Numerical;
  }
  return ErrorCategory::Generic;
}

}  // namespace

std::string_view library_version() { return OPGROWTH_VERSION; }

std::string_view to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::None: return "none";
    case ErrorCategory::Generic: return "generic";
    case ErrorCategory::Config: return "config";
    case ErrorCategory::Io: return "io";
    case ErrorCategory::Numerical: return "numerical";
  }
  return "?";
}

const SeriesRecord* RunBundle::find(SeriesKind kind) const {
  for (const auto& rec : series) {
    if (rec.raw.kind == kind) return &rec;
  }
  return nullptr;
}

SuperVector make_seed(const ExperimentConfig& cfg) {
  return vectorize_operator(site_operator(cfg.n_sites, cfg.seed_site, cfg.seed_pauli)).normalized();
}

SuperOperator make_superoperator(const ExperimentConfig& cfg) {
  const SpinOperator h = build_tfim(cfg.n_sites, cfg.g, cfg.h);
  const auto jumps = build_jump_operators(cfg.n_sites, cfg.alpha, cfg.gamma, cfg.jump_mode);
  return build_lindbladian(h, jumps);
}

RunBundle run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  RunBundle bundle;
  bundle.config = cfg;

  try {
    bundle.jump_count =
        build_jump_operators(cfg.n_sites, cfg.alpha, cfg.gamma, cfg.jump_mode).size();
    const SuperOperator l = make_superoperator(cfg);
    bundle.superop_nonzeros = l.nonzeros();
    bundle.superop_hermitian = l.is_hermitian(1e-12 * std::max(1.0, l.frobenius_norm()));
    const SuperVector seed = make_seed(cfg);
    const bool want_wf = cfg.time_grid.has_value();

    if (cfg.engine != Engine::Arnoldi) {
      LanczosOptions opts;
      opts.max_steps = cfg.max_steps;
      opts.tol = cfg.tol;
      opts.full_reorth = cfg.lanczos_reorth();
      opts.keep_basis = want_wf;
      bundle.lanczos = lanczos(l, seed, opts);
      bundle.series.push_back(make_record(extract_series(*bundle.lanczos, SeriesKind::LanczosB), cfg));
    }

    if (cfg.engine != Engine::Lanczos) {
      ArnoldiOptions opts;
      opts.max_steps = cfg.max_steps;
      opts.tol = cfg.tol;
      opts.orthogonalization_passes = cfg.orthogonalization_passes;
      bundle.arnoldi = arnoldi(l, seed, opts);
      for (SeriesKind kind : kArnoldiKinds) {
        bundle.series.push_back(make_record(extract_series(*bundle.arnoldi, kind), cfg));
      }
      bundle.ritz = ritz_values(*bundle.arnoldi, cfg.ritz_limit);
      bundle.ritz_order = static_cast<Index>(bundle.ritz.size());
      bundle.recurrence_residual = check_recurrence_residual(*bundle.arnoldi, l);
      bundle.arnoldi_orthonormality =
          orthonormality_defect(bundle.arnoldi->basis, l.hilbert_dim());
    }

    if (want_wf) {
      const auto times = cfg.time_grid->values();
      if (bundle.lanczos) bundle.lanczos_wavefunctions = wavefunctions(l, *bundle.lanczos, times);
      if (bundle.arnoldi) bundle.arnoldi_wavefunctions = wavefunctions(l, *bundle.arnoldi, times);
    }
  } catch (const std::exception& e) {
    bundle.ok = false;
    bundle.error_category = categorize(e);
    bundle.error = e.what();
  }

  bundle.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return bundle;
}

}  // namespace opgrowth
