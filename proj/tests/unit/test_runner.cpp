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


#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "opgrowth/analysis.hpp"
#include "opgrowth/config.hpp"
#include "opgrowth/experiment.hpp"
#include "opgrowth/krylov.hpp"
#include "opgrowth/oracle.hpp"
#include "opgrowth/superop.hpp"
#include "opgrowth/sweep.hpp"

namespace opgrowth {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "opgrowth_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.n_sites = 3;
  cfg.alpha = 0.1;
  cfg.gamma = 0.1;
  cfg.max_steps = 20;
  cfg.growth_lo = 2;
  cfg.growth_hi = 12;
  return cfg;
}

TEST(Config, DefaultsMirrorTheReferenceSetup) {
  const ExperimentConfig cfg;
  EXPECT_EQ(cfg.n_sites, 6);
  EXPECT_EQ(cfg.seed_site, 3);
  EXPECT_EQ(cfg.seed_pauli, Pauli::Z);
  EXPECT_EQ(cfg.g, -1.05);
  EXPECT_EQ(cfg.h, 0.5);
  EXPECT_EQ(cfg.smoothing.window, 5);
  EXPECT_EQ(cfg.smoothing.n_start, 41);
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, ParsesSectionsAndComments) {
  const auto loaded = parse_config(R"(
# comment
[run]
label = demo
engine = arnoldi
[model]
n_sites = 4
regime = integrable
; another comment
[dissipation]
jump_mode = boundary_only
alpha = 0.05
[krylov]
max_steps = 33
reorth = on
[analysis]
growth_window = 3, 20
[wavefunctions]
t_max = 2
points = 5
)");
  const auto& cfg = loaded.experiment;
  EXPECT_EQ(cfg.run_label, "demo");
  EXPECT_EQ(cfg.engine, Engine::Arnoldi);
  EXPECT_EQ(cfg.n_sites, 4);
  EXPECT_EQ(cfg.regime, Regime::Integrable);
  EXPECT_EQ(cfg.h, 0.0);
  EXPECT_EQ(cfg.jump_mode, JumpMode::BoundaryOnly);
  EXPECT_EQ(cfg.alpha, 0.05);
  EXPECT_EQ(cfg.max_steps, 33);
  EXPECT_EQ(cfg.reorth, ReorthMode::On);
  EXPECT_EQ(cfg.growth_lo, 3);
  EXPECT_EQ(cfg.growth_hi, 20);
  ASSERT_TRUE(cfg.time_grid.has_value());
  EXPECT_EQ(cfg.time_grid->points, 5);
  EXPECT_EQ(cfg.time_grid->values().back(), 2.0);
  EXPECT_FALSE(loaded.sweep.has_value());
}

TEST(Config, TrailingCommentsAreIgnored) {
  const auto cfg = parse_config(
      "[model]   ; chain\nn_sites = 4    ; sites\nregime = integrable # no field\n[run]\nlabel = a#b\n")
                       .experiment;
  EXPECT_EQ(cfg.n_sites, 4);
  EXPECT_EQ(cfg.regime, Regime::Integrable);
  EXPECT_EQ(cfg.run_label, "a#b");
}

TEST(Config, ExplicitCouplingOverridesRegimeInAnyOrder) {
  const auto a = parse_config("[model]\nh = 0.3\nregime = chaotic\n").experiment;
  EXPECT_EQ(a.regime, Regime::Custom);
  EXPECT_EQ(a.h, 0.3);
  EXPECT_EQ(a.g, -1.05);
  const auto b = parse_config("[model]\nregime = chaotic\nh = 0.5\n").experiment;
  EXPECT_EQ(b.regime, Regime::Chaotic);
}

TEST(Config, ErrorsCarryFieldPath) {
  auto field_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(field_of("[seed]\nsite = 9\n"), "seed.site");
  EXPECT_EQ(field_of("[krylov]\ntol = -1\n"), "krylov.tol");
  EXPECT_EQ(field_of("[krylov]\nmax_steps = 0\n"), "krylov.max_steps");
  EXPECT_EQ(field_of("[krylov]\nmax_steps = ten\n"), "krylov.max_steps");
  EXPECT_EQ(field_of("[model]\ncolour = red\n"), "model.colour");
  EXPECT_EQ(field_of("[dissipation]\nalpha = -0.1\n"), "dissipation.alpha");
  EXPECT_EQ(field_of("[run]\nengine = magic\n"), "run.engine");
  EXPECT_EQ(field_of("[analysis]\ngrowth_window = 5, 8\n"), "analysis.growth_window");
}

TEST(Config, SetFieldAcceptsBareAndQualifiedKeys) {
  ExperimentConfig cfg;
  set_field(cfg, "alpha", "0.15");
  set_field(cfg, "dissipation.gamma", "0.2");
  set_field(cfg, "regime", "integrable");
  EXPECT_EQ(cfg.alpha, 0.15);
  EXPECT_EQ(cfg.gamma, 0.2);
  EXPECT_EQ(cfg.h, 0.0);
  EXPECT_THROW(set_field(cfg, "nonsense", "1"), ConfigError);
  EXPECT_EQ(qualified_key("max_steps"), "krylov.max_steps");
}

TEST(Config, ClosedDetectionAndReorthDefault) {
  ExperimentConfig cfg;
  EXPECT_TRUE(cfg.is_closed());
  EXPECT_TRUE(cfg.lanczos_reorth());
  cfg.gamma = 0.1;
  EXPECT_FALSE(cfg.is_closed());
  EXPECT_FALSE(cfg.lanczos_reorth());
  cfg.reorth = ReorthMode::On;
  EXPECT_TRUE(cfg.lanczos_reorth());
  cfg.jump_mode = JumpMode::BoundaryOnly;
  EXPECT_TRUE(cfg.is_closed());
}

TEST(Config, JsonRoundTrip) {
  ExperimentConfig cfg = small_config();
  cfg.run_label = "round";
  cfg.engine = Engine::Lanczos;
  set_field(cfg, "h", "0.123456789012345");
  cfg.tol = 3.3e-11;
  cfg.time_grid = TimeGrid{0.5, 1.5, 7};
  cfg.thresholds.beta_linear = 0.85;
  EXPECT_EQ(ExperimentConfig::from_json(cfg.to_json()), cfg);
  EXPECT_EQ(ExperimentConfig::from_json(nlohmann::json::parse(cfg.to_json().dump())), cfg);
}

TEST(Config, JsonRoundTripProperty) {
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    ExperimentConfig cfg;
    cfg.n_sites = 1 + trial % 6;
    cfg.seed_site = 1 + trial % cfg.n_sites;
    set_field(cfg, "g", fmt::format("{}", -u(rng)));
    cfg.alpha = u(rng);
    cfg.gamma = u(rng) * 1e-3;
    cfg.tol = 1e-12 + u(rng) * 1e-9;
    cfg.jump_mode = static_cast<JumpMode>(trial % 4);
    cfg.seed_pauli = static_cast<Pauli>(trial % 5);
    EXPECT_EQ(ExperimentConfig::from_json(nlohmann::json::parse(cfg.to_json().dump())), cfg) << trial;
  }
}

TEST(Config, SweepSectionParses) {
  const auto loaded = parse_config(
      "[run]\nlabel = s\n[dissipation]\ngamma = 0.1\n"
      "[sweep]\nalpha = 0.01, 0.05, 0.1, 0.15\nregime = integrable, chaotic\nparallelism = 2\n");
  ASSERT_TRUE(loaded.sweep.has_value());
  EXPECT_EQ(loaded.sweep->axes.size(), 2u);
  EXPECT_EQ(loaded.sweep->parallelism, 2);
  EXPECT_EQ(expand_sweep(*loaded.sweep).size(), 8u);
  EXPECT_THROW(parse_config("[sweep]\nalpha = 0.1, -0.2\n"), ConfigError);
  EXPECT_THROW(parse_config("[sweep]\nbogus = 1\n"), ConfigError);
}

TEST(Config, MissingFileIsIoError) {
  EXPECT_THROW(load_config("/nonexistent/opgrowth.ini"), IoError);
  EXPECT_THROW(find_preset("no_such_preset"), ConfigError);
}

TEST(Config, OutputRootOverride) {
  ::setenv("OPGROWTH_OUTPUT_ROOT", "/tmp/og_root", 1);
  EXPECT_EQ(resolve_output_dir("out"), fs::path("/tmp/og_root/out"));
  EXPECT_EQ(resolve_output_dir("/abs/out"), fs::path("/abs/out"));
  ::unsetenv("OPGROWTH_OUTPUT_ROOT");
  EXPECT_EQ(resolve_output_dir("out"), fs::path("out"));
}

TEST(Sweep, ProductSizes) {
  SweepConfig sweep;
  sweep.base = small_config();
  sweep.axes = {{"alpha", {"0.01", "0.05", "0.1", "0.15"}}};
  EXPECT_EQ(expand_sweep(sweep).size(), 4u);
  sweep.axes.push_back({"regime", {"integrable", "chaotic"}});
  const auto points = expand_sweep(sweep);
  ASSERT_EQ(points.size(), 8u);
  EXPECT_EQ(points[0].name, "alpha-0.01__regime-integrable");
  EXPECT_EQ(points[7].name, "alpha-0.15__regime-chaotic");
  EXPECT_EQ(points[3].config.alpha, 0.05);
  EXPECT_EQ(points[3].config.regime, Regime::Chaotic);
  sweep.include_closed = true;
  const auto with_closed = expand_sweep(sweep);
  ASSERT_EQ(with_closed.size(), 10u);
  EXPECT_EQ(with_closed[8].name, "closed__regime-integrable");
  EXPECT_TRUE(with_closed[8].config.is_closed());
  for (std::size_t i = 0; i < with_closed.size(); ++i) EXPECT_EQ(with_closed[i].index, static_cast<int>(i));
}

TEST(Sweep, ManifestListsEveryPointOnceAndSurvivesFailures) {
  const fs::path root = scratch("sweep_manifest");
  SweepConfig sweep;
  sweep.base = small_config();
  sweep.base.engine = Engine::Lanczos;
  sweep.axes = {{"alpha", {"0.01", "0.05", "0.1"}}};
  sweep.parallelism = 2;
  // A plain file where a point directory should go makes that point fail.
  std::ofstream(root / "alpha-0.05") << "blocker";
  const auto outcomes = run_sweep(sweep, root);
  ASSERT_EQ(outcomes.size(), 3u);
  EXPECT_TRUE(outcomes[0].ok);
  EXPECT_FALSE(outcomes[1].ok);
  EXPECT_EQ(outcomes[1].category, ErrorCategory::Io);
  EXPECT_TRUE(outcomes[2].ok);
  const std::string manifest = slurp(root / "manifest.csv");
  EXPECT_EQ(manifest.rfind("index,name,status,category,message\n", 0), 0u);
  EXPECT_NE(manifest.find("0,alpha-0.01,success,none,\n"), std::string::npos);
  EXPECT_NE(manifest.find("1,alpha-0.05,failure,io,"), std::string::npos);
  EXPECT_NE(manifest.find("2,alpha-0.1,success,none,\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(root / "alpha-0.1" / "coefficients.csv"));
}

TEST(Experiment, SeedHasUnitNorm) {
  ExperimentConfig cfg = small_config();
  for (Pauli p : {Pauli::X, Pauli::Z, Pauli::Plus, Pauli::Minus}) {
    cfg.seed_pauli = p;
    EXPECT_NEAR(make_seed(cfg).norm(), 1.0, 1e-15);
  }
}

TEST(Experiment, BundleContainsAllSeries) {
  const auto bundle = run_experiment(small_config());
  ASSERT_TRUE(bundle.ok) << bundle.error;
  ASSERT_TRUE(bundle.lanczos && bundle.arnoldi);
  for (SeriesKind k : {SeriesKind::LanczosB, SeriesKind::ArnoldiSubdiag, SeriesKind::ArnoldiSuperdiag,
                       SeriesKind::ArnoldiDiagAbs, SeriesKind::SubdiagAsymmetry}) {
    ASSERT_NE(bundle.find(k), nullptr) << to_string(k);
  }
  EXPECT_TRUE(bundle.find(SeriesKind::LanczosB)->growth.has_value());
  EXPECT_FALSE(bundle.find(SeriesKind::ArnoldiDiagAbs)->growth.has_value());
  EXPECT_EQ(bundle.ritz.size(), 20u);
  EXPECT_LT(*bundle.recurrence_residual, 1e-8);
  EXPECT_LT(*bundle.arnoldi_orthonormality, 1e-8);
}

TEST(Experiment, ClosedLanczosAndArnoldiAgree) {
  ExperimentConfig cfg = small_config();
  cfg.alpha = cfg.gamma = 0;
  const auto bundle = run_experiment(cfg);
  const auto& b = bundle.find(SeriesKind::LanczosB)->raw;
  const auto& h = bundle.find(SeriesKind::ArnoldiSubdiag)->raw;
  ASSERT_EQ(b.values.size(), h.values.size());
  for (std::size_t i = 0; i < b.values.size(); ++i) EXPECT_NEAR(b.values[i], h.values[i], 1e-9);
  for (double d : bundle.find(SeriesKind::ArnoldiDiagAbs)->raw.values) EXPECT_LT(d, 1e-9);
}

TEST(Experiment, InvalidConfigThrows) {
  ExperimentConfig cfg = small_config();
  cfg.seed_site = 7;
  EXPECT_THROW(run_experiment(cfg), ConfigError);
}

TEST(Emit, CoefficientsLineFormat) {
  RunBundle bundle;
  bundle.config = small_config();
  SeriesRecord rec;
  rec.raw.kind = SeriesKind::LanczosB;
  rec.raw.values = {2.0};
  rec.smoothed = rec.raw;
  bundle.series.push_back(rec);
  const fs::path dir = scratch("emit_coeff");
  emit_outputs(bundle, dir);
  EXPECT_EQ(slurp(dir / "coefficients.csv"),
            "n,kind,value,smoothed_value\n1,lanczos_b,2.0000000000000000e+00,2.0000000000000000e+00\n");
  EXPECT_FALSE(fs::exists(dir / "hessenberg.csv"));
}

TEST(Emit, DephasingHessenbergSingleEntry) {
  const double gamma = 0.25;
  const std::vector<SpinOperator> jumps{site_operator(1, 1, Pauli::Z).scaled(std::sqrt(gamma), "L")};
  const auto l = build_lindbladian(SpinOperator(1, DenseMatrix::Zero(2, 2)), jumps);
  RunBundle bundle;
  bundle.config = small_config();
  bundle.arnoldi = arnoldi(l, vectorize_operator(site_operator(1, 1, Pauli::X)), {});
  bundle.ritz = ritz_values(*bundle.arnoldi);
  const fs::path dir = scratch("emit_hess");
  emit_outputs(bundle, dir);
  EXPECT_EQ(slurp(dir / "hessenberg.csv"),
            "row,col,re,im\n0,0,0.0000000000000000e+00,5.0000000000000000e-01\n");
  EXPECT_EQ(slurp(dir / "ritz.csv"), "re,im\n0.0000000000000000e+00,5.0000000000000000e-01\n");
}

TEST(Emit, UnwritablePathIsIoError) {
  const fs::path dir = scratch("emit_bad");
  std::ofstream(dir / "file") << "x";
  RunBundle bundle;
  bundle.config = small_config();
  EXPECT_THROW(emit_outputs(bundle, dir / "file" / "sub"), IoError);
}

TEST(Emit, MetaJsonReproducesTheRun) {
  ExperimentConfig cfg = small_config();
  cfg.time_grid = TimeGrid{0, 1, 11};
  const auto bundle = run_experiment(cfg);
  const fs::path dir = scratch("emit_meta");
  emit_outputs(bundle, dir);
  const auto meta = nlohmann::json::parse(slurp(dir / "meta.json"));
  EXPECT_EQ(meta["library"]["version"], std::string(library_version()));
  EXPECT_EQ(meta["smoothing"]["n_start"], 41);
  EXPECT_TRUE(meta["status"]["ok"].get<bool>());
  const auto reloaded = load_config(dir / "meta.json").experiment;
  EXPECT_EQ(reloaded, cfg);
  const fs::path again = scratch("emit_meta_again");
  emit_outputs(run_experiment(reloaded), again);
  for (const char* f : {"coefficients.csv", "hessenberg.csv", "ritz.csv", "wavefunctions.csv",
                        "wavefunctions_arnoldi.csv"}) {
    ASSERT_TRUE(fs::exists(dir / f)) << f;
    EXPECT_EQ(slurp(dir / f), slurp(again / f)) << f;
  }
}

TEST(Emit, WavefunctionRowsAndHeader) {
  ExperimentConfig cfg = small_config();
  cfg.engine = Engine::Lanczos;
  cfg.alpha = cfg.gamma = 0;
  cfg.max_steps = 64;
  cfg.growth_hi = 9;
  cfg.time_grid = TimeGrid{0, 1, 3};
  const auto bundle = run_experiment(cfg);
  ASSERT_TRUE(bundle.ok) << bundle.error;
  const fs::path dir = scratch("emit_wf");
  emit_outputs(bundle, dir);
  std::ifstream in(dir / "wavefunctions.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,n,re,im,norm,complexity");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 3u * static_cast<std::size_t>(bundle.lanczos->krylov_dimension()));
}

TEST(Determinism, ByteIdenticalOutputs) {
  ExperimentConfig cfg;
  cfg.n_sites = 4;
  cfg.alpha = 0.05;
  cfg.gamma = 0.1;
  cfg.max_steps = 60;
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  emit_outputs(run_experiment(cfg), a);
  emit_outputs(run_experiment(cfg), b);
  for (const char* f : {"coefficients.csv", "hessenberg.csv", "ritz.csv"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
}

TEST(Oracle, BatteryPassesAtSmallSizes) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& check : run_oracle_battery(n)) {
      EXPECT_TRUE(check.passed) << "N=" << n << " " << check.name << " " << check.value;
    }
  }
  EXPECT_THROW(run_oracle_battery(0), DomainError);
  EXPECT_THROW(run_oracle_battery(kMaxOracleSites + 1), DomainError);
}

}  // namespace
}  // namespace opgrowth
