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

#include <cmath>
#include <fstream>
#include <iterator>

#include <fmt/format.h>

#include "opgrowth/experiment.hpp"

namespace opgrowth {

namespace {

namespace fs = std::filesystem;

// 17 significant digits.
constexpr const char* kReal = "{:.16e}";

void write_file(const fs::path& path, const fmt::memory_buffer& buf) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  out.close();
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

void append_real(fmt::memory_buffer& buf, double v) {
  fmt::format_to(std::back_inserter(buf), fmt::runtime(kReal), v);
}

void write_coefficients(const RunBundle& b, const fs::path& path) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "n,kind,value,smoothed_value\n");
  for (const auto& rec : b.series) {
    const auto kind = to_string(rec.raw.kind);
    for (int n = rec.raw.first_index; n <= rec.raw.last_index(); ++n) {
      fmt::format_to(std::back_inserter(buf), "{},{},", n, kind);
      append_real(buf, rec.raw.at(n));
      buf.push_back(',');
      append_real(buf, rec.smoothed.at(n));
      buf.push_back('\n');
    }
  }
  write_file(path, buf);
}

void write_hessenberg(const ArnoldiRun& run, int limit, const fs::path& path) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "row,col,re,im\n");
  const Index p = run.steps();
  const Index cols = limit > 0 ? std::min<Index>(p, limit) : p;
  for (Index j = 0; j < cols; ++j) {
    const Vector& c = run.columns[static_cast<std::size_t>(j)];
    for (Index i = 0; i < c.size(); ++i) {
      fmt::format_to(std::back_inserter(buf), "{},{},", i, j);
      append_real(buf, c(i).real());
      buf.push_back(',');
      append_real(buf, c(i).imag());
      buf.push_back('\n');
    }
  }
  write_file(path, buf);
}

void write_ritz(const std::vector<cplx>& ritz, const fs::path& path) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "re,im\n");
  for (const cplx& z : ritz) {
    append_real(buf, z.real());
    buf.push_back(',');
    append_real(buf, z.imag());
    buf.push_back('\n');
  }
  write_file(path, buf);
}

void write_wavefunctions(const WavefunctionSeries& wf, const fs::path& path) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "t,n,re,im,norm,complexity\n");
  for (std::size_t k = 0; k < wf.times.size(); ++k) {
    const auto col = static_cast<Index>(k);
    for (Index n = 0; n < wf.phi.rows(); ++n) {
      append_real(buf, wf.times[k]);
      fmt::format_to(std::back_inserter(buf), ",{},", n);
      append_real(buf, wf.phi(n, col).real());
      buf.push_back(',');
      append_real(buf, wf.phi(n, col).imag());
      buf.push_back(',');
      append_real(buf, wf.norm[k]);
      buf.push_back(',');
      append_real(buf, wf.complexity[k]);
      buf.push_back('\n');
    }
  }
  write_file(path, buf);
}

nlohmann::json fit_json(const GrowthFit& fit) {
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"fit_quality", fit.fit_quality},
          {"beta", std::isfinite(fit.beta) ? nlohmann::json(fit.beta) : nlohmann::json()},
          {"loglog_quality", fit.loglog_quality},
          {"label", to_string(fit.label)}};
}

}  // namespace

nlohmann::json bundle_metadata(const RunBundle& b) {
  const ExperimentConfig& cfg = b.config;
  nlohmann::json j;
  j["config"] = cfg.to_json();
  j["library"] = {{"name", "opgrowth"}, {"version", library_version()}};
  j["status"] = {{"ok", b.ok}, {"category", to_string(b.error_category)}, {"error", b.error}};
  j["tolerances"] = {{"krylov_tol", cfg.tol},
                     {"termination", "relative to the norm of L applied to the seed"},
                     {"expm_local_tol", ExpmOptions{}.local_tol}};
  j["smoothing"] = {{"window", cfg.smoothing.window}, {"n_start", cfg.smoothing.n_start}};
  j["growth_window"] = {cfg.growth_lo, cfg.growth_hi};
  j["superoperator"] = {{"dimension", liouville_dim(cfg.n_sites)},
                        {"nonzeros", b.superop_nonzeros},
                        {"hermitian", b.superop_hermitian},
                        {"jump_operators", b.jump_count}};
  if (b.lanczos) {
    const LanczosRun& r = *b.lanczos;
    j["lanczos"] = {{"steps", r.b.size()},
                    {"krylov_dimension", r.krylov_dimension()},
                    {"terminated", r.terminated},
                    {"reorthogonalized", r.reorthogonalized},
                    {"scale", r.scale},
                    {"orthogonality_loss", r.orthogonality_loss},
                    {"orthogonality_lost", r.orthogonality_lost}};
  }
  if (b.arnoldi) {
    const ArnoldiRun& r = *b.arnoldi;
    const Index p = r.steps();
    j["arnoldi"] = {{"steps", p},
                    {"krylov_dimension", r.krylov_dimension()},
                    {"terminated", r.terminated},
                    {"scale", r.scale},
                    {"orthogonalization_passes", cfg.orthogonalization_passes},
                    {"hessenberg_columns_written",
                     cfg.hessenberg_limit > 0 ? std::min<Index>(p, cfg.hessenberg_limit) : p},
                    {"ritz_order", b.ritz_order}};
    if (b.recurrence_residual) j["arnoldi"]["recurrence_residual"] = *b.recurrence_residual;
    if (b.arnoldi_orthonormality) j["arnoldi"]["orthonormality_defect"] = *b.arnoldi_orthonormality;
  }
  nlohmann::json growth = nlohmann::json::object();
  for (const auto& rec : b.series) {
    if (rec.growth) growth[std::string(to_string(rec.raw.kind))] = fit_json(*rec.growth);
  }
  j["growth"] = growth;
  if (b.lanczos_wavefunctions || b.arnoldi_wavefunctions) {
    nlohmann::json wf;
    if (b.lanczos_wavefunctions) {
      wf["wavefunctions.csv"] = to_string(b.lanczos_wavefunctions->convention);
    }
    if (b.arnoldi_wavefunctions) {
      const char* name = b.lanczos_wavefunctions ? "wavefunctions_arnoldi.csv" : "wavefunctions.csv";
      wf[name] = to_string(b.arnoldi_wavefunctions->convention);
    }
    j["wavefunctions"] = wf;
  }
  j["wall_seconds"] = b.wall_seconds;
  return j;
}

void emit_outputs(const RunBundle& b, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));

  write_coefficients(b, dir / "coefficients.csv");
  if (b.arnoldi) {
    write_hessenberg(*b.arnoldi, b.config.hessenberg_limit, dir / "hessenberg.csv");
    write_ritz(b.ritz, dir / "ritz.csv");
  }
  if (b.lanczos_wavefunctions) write_wavefunctions(*b.lanczos_wavefunctions, dir / "wavefunctions.csv");
  if (b.arnoldi_wavefunctions) {
    write_wavefunctions(*b.arnoldi_wavefunctions,
                        dir / (b.lanczos_wavefunctions ? "wavefunctions_arnoldi.csv"
                                                       : "wavefunctions.csv"));
  }

  fmt::memory_buffer buf;
  const std::string text = bundle_metadata(b).dump(2) + "\n";
  buf.append(text.data(), text.data() + text.size());
  write_file(dir / "meta.json", buf);
}

}  // namespace opgrowth
