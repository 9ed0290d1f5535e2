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

// opgrowth command-line driver.
//
//   opgrowth run      --config <path> | --preset <name> [--set key=value]...
//   opgrowth sweep    --config <path> | --preset <name> [--set key=value]...
//   opgrowth validate --config <path> | --preset <name>
//   opgrowth oracle   --n <N>
//
// Exit codes: 0 ok, 1 generic, 2 config/usage, 3 I/O, 4 numerical.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "opgrowth/config.hpp"
#include "opgrowth/experiment.hpp"
#include "opgrowth/oracle.hpp"
#include "opgrowth/sweep.hpp"

namespace {

using opgrowth::ErrorCategory;

struct Source {
  std::string config;
  std::string preset;
  std::vector<std::string> overrides;
};

void add_source(CLI::App* cmd, Source& src, bool with_overrides) {
  auto* cfg = cmd->add_option("--config,-c", src.config, "Configuration file (.ini, or a meta.json)");
  auto* pre = cmd->add_option("--preset,-p", src.preset, "Named preset (fig2, fig3, fig4, fig5, appA, appB)");
  cfg->excludes(pre);
  pre->excludes(cfg);
  if (with_overrides) {
    cmd->add_option("--set,-s", src.overrides, "Override a field, e.g. --set alpha=0.05")
        ->allow_extra_args(false);
  }
}

opgrowth::LoadedConfig load(const Source& src) {
  if (src.config.empty() && src.preset.empty()) {
    throw opgrowth::ConfigError("command line", "one of --config or --preset is required");
  }
  const auto path = src.config.empty() ? opgrowth::find_preset(src.preset)
                                       : std::filesystem::path(src.config);
  opgrowth::LoadedConfig loaded = opgrowth::load_config(path);
  for (const auto& kv : src.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw opgrowth::ConfigError(kv, "override must read key=value");
    opgrowth::set_field(loaded.experiment, kv.substr(0, eq), kv.substr(eq + 1));
  }
  loaded.experiment.validate();
  if (loaded.sweep) {
    loaded.sweep->base = loaded.experiment;
    loaded.sweep->validate();
  }
  return loaded;
}

int exit_code(ErrorCategory c) { return static_cast<int>(c); }

void print_bundle_summary(const opgrowth::RunBundle& b) {
  if (b.lanczos) {
    fmt::print("  lanczos: {} coefficients, K={}{}\n", b.lanczos->b.size(),
               b.lanczos->krylov_dimension(), b.lanczos->terminated ? " (terminated)" : "");
  }
  if (b.arnoldi) {
    fmt::print("  arnoldi: {} columns, K={}{}\n", b.arnoldi->steps(), b.arnoldi->krylov_dimension(),
               b.arnoldi->terminated ? " (terminated)" : "");
  }
  for (const auto& rec : b.series) {
    if (rec.growth) {
      fmt::print("  {}: slope={:.4f} beta={:.3f} R2={:.4f} -> {}\n", to_string(rec.raw.kind),
                 rec.growth->slope, rec.growth->beta, rec.growth->fit_quality,
                 to_string(rec.growth->label));
    }
  }
}

int run_single(const opgrowth::ExperimentConfig& cfg) {
  const auto dir = opgrowth::resolve_output_dir(cfg.output_dir) / cfg.run_label;
  fmt::print("running {} -> {}\n", cfg.run_label, dir.string());
  const opgrowth::RunBundle bundle = opgrowth::run_experiment(cfg);
  opgrowth::emit_outputs(bundle, dir);
  print_bundle_summary(bundle);
  fmt::print("  wall time {:.2f}s\n", bundle.wall_seconds);
  if (!bundle.ok) {
    fmt::print(stderr, "error ({}): {}\n", to_string(bundle.error_category), bundle.error);
    return exit_code(bundle.error_category);
  }
  return 0;
}

int run_sweep(const opgrowth::SweepConfig& sweep) {
  const auto root = opgrowth::resolve_output_dir(sweep.base.output_dir) / sweep.base.run_label;
  const auto points = opgrowth::expand_sweep(sweep);
  fmt::print("sweep {}: {} points -> {}\n", sweep.base.run_label, points.size(), root.string());
  const auto outcomes = opgrowth::run_sweep(sweep, root, [](const opgrowth::SweepOutcome& o) {
    fmt::print("  [{}] {} {} ({:.2f}s){}\n", o.point.index, o.point.name,
               o.ok ? "ok" : "FAILED", o.wall_seconds, o.ok ? "" : ": " + o.message);
    std::fflush(stdout);
  });
  for (const auto& o : outcomes) {
    if (!o.ok) return exit_code(o.category == ErrorCategory::None ? ErrorCategory::Generic : o.category);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Krylov operator-growth experiments for open spin chains"};
  app.set_version_flag("--version", std::string(opgrowth::library_version()));
  app.require_subcommand(1);

  Source run_src, sweep_src, validate_src;
  int oracle_n = 2;
  auto* run_cmd = app.add_subcommand("run", "Run one experiment, or every point of a config with a [sweep] section");
  add_source(run_cmd, run_src, true);
  auto* sweep_cmd = app.add_subcommand("sweep", "Run the [sweep] section of a config");
  add_source(sweep_cmd, sweep_src, true);
  auto* validate_cmd = app.add_subcommand("validate", "Parse and check a config without running it");
  add_source(validate_cmd, validate_src, false);
  auto* oracle_cmd = app.add_subcommand("oracle", "Run the dense-oracle self-test battery");
  oracle_cmd->add_option("--n", oracle_n, "Number of sites")
      ->check(CLI::Range(1, opgrowth::kMaxOracleSites));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code(ErrorCategory::Config);
  }

  try {
    if (*run_cmd) {
      const auto loaded = load(run_src);
      return loaded.sweep ? run_sweep(*loaded.sweep) : run_single(loaded.experiment);
    }
    if (*sweep_cmd) {
      const auto loaded = load(sweep_src);
      if (!loaded.sweep) throw opgrowth::ConfigError("sweep", "config has no [sweep] section");
      return run_sweep(*loaded.sweep);
    }
    if (*validate_cmd) {
      const auto loaded = load(validate_src);
      fmt::print("config ok: {}\n", loaded.experiment.to_json().dump());
      if (loaded.sweep) {
        const auto points = opgrowth::expand_sweep(*loaded.sweep);
        fmt::print("sweep with {} points:\n", points.size());
        for (const auto& p : points) fmt::print("  {}\n", p.name);
      }
      return 0;
    }
    if (*oracle_cmd) {
      const auto checks = opgrowth::run_oracle_battery(oracle_n);
      bool all = true;
      for (const auto& c : checks) {
        fmt::print("{} {:<28} {:.3e} (< {:.0e})\n", c.passed ? "PASS" : "FAIL", c.name, c.value,
                   c.threshold);
        all = all && c.passed;
      }
      return all ? 0 : exit_code(ErrorCategory::Numerical);
    }
  } catch (const opgrowth::ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return exit_code(ErrorCategory::Config);
  } catch (const opgrowth::IoError& e) {
    fmt::print(stderr, "i/o error: {}\n", e.what());
    return exit_code(ErrorCategory::Io);
  } catch (const opgrowth::DomainError& e) {
    fmt::print(stderr, "numerical error: {}\n", e.what());
    return exit_code(ErrorCategory::Numerical);
  } catch (const opgrowth::StateError& e) {
    fmt::print(stderr, "numerical error: {}\n", e.what());
    return exit_code(ErrorCategory::Numerical);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return exit_code(ErrorCategory::Generic);
  }
  return exit_code(ErrorCategory::Generic);
}
