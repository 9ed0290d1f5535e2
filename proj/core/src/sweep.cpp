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

#include "opgrowth/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace opgrowth {

namespace {

std::string short_key(const std::string& qualified) {
  return qualified.substr(qualified.find('.') + 1);
}

bool is_dissipation(const std::string& qualified) {
  return qualified.rfind("dissipation.", 0) == 0;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

// Odometer over `axes`, calling visit with one value index per axis.
template <typename Visit>
void for_each_combination(const std::vector<const SweepAxis*>& axes, Visit visit) {
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    visit(idx);
    std::size_t k = axes.size();
    while (k > 0) {
      --k;
      if (++idx[k] < axes[k]->values.size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (axes.empty()) return;
  }
}

}  // namespace

std::vector<SweepPoint> expand_sweep(const SweepConfig& sweep) {
  std::vector<SweepPoint> points;
  std::set<std::string> names;

  auto add = [&](const std::vector<const SweepAxis*>& axes, const std::vector<std::size_t>& idx,
                 bool closed) {
    SweepPoint pt;
    pt.config = sweep.base;
    std::vector<std::string> parts;
    if (closed) {
      parts.emplace_back("closed");
      pt.config.jump_mode = JumpMode::Closed;
      pt.config.alpha = 0.0;
      pt.config.gamma = 0.0;
    }
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const std::string& value = axes[a]->values[idx[a]];
      set_field(pt.config, axes[a]->parameter, value);
      parts.push_back(short_key(qualified_key(axes[a]->parameter)) + "-" + value);
    }
    pt.name = parts.empty() ? "base" : fmt::format("{}", fmt::join(parts, "__"));
    if (!names.insert(pt.name).second) return;
    pt.config.run_label = pt.name;
    pt.index = static_cast<int>(points.size());
    points.push_back(std::move(pt));
  };

  std::vector<const SweepAxis*> all;
  for (const auto& axis : sweep.axes) all.push_back(&axis);
  for_each_combination(all, [&](const auto& idx) { add(all, idx, false); });

  if (sweep.include_closed) {
    std::vector<const SweepAxis*> kept;
    for (const auto& axis : sweep.axes) {
      if (!is_dissipation(qualified_key(axis.parameter))) kept.push_back(&axis);
    }
    for_each_combination(kept, [&](const auto& idx) { add(kept, idx, true); });
  }
  return points;
}

void write_manifest(const std::vector<SweepOutcome>& outcomes, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out << "index,name,status,category,message\n";
  for (const auto& o : outcomes) {
    out << fmt::format("{},{},{},{},{}\n", o.point.index, csv_field(o.point.name),
                       o.ok ? "success" : "failure", to_string(o.category), csv_field(o.message));
  }
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

std::vector<SweepOutcome> run_sweep(const SweepConfig& sweep, const std::filesystem::path& root,
                                    const SweepObserver& observer) {
  sweep.validate();
  const auto points = expand_sweep(sweep);
  std::vector<SweepOutcome> outcomes(points.size());

  std::error_code ec;
  std::filesystem::create_directories(root, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", root.string(), ec.message()));

  std::atomic<std::size_t> next{0};
  std::mutex report;
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      SweepOutcome& o = outcomes[i];
      o.point = points[i];
      try {
        RunBundle bundle = run_experiment(o.point.config);
        o.ok = bundle.ok;
        o.category = bundle.error_category;
        o.message = bundle.error;
        o.wall_seconds = bundle.wall_seconds;
        emit_outputs(bundle, root / o.point.name);
      } catch (const ConfigError& e) {
        o.ok = false;
        o.category = ErrorCategory::Config;
        o.message = e.what();
      } catch (const IoError& e) {
        o.ok = false;
        o.category = ErrorCategory::Io;
        o.message = e.what();
      } catch (const std::exception& e) {
        o.ok = false;
        o.category = ErrorCategory::Generic;
        o.message = e.what();
      }
      if (observer) {
        std::lock_guard lock(report);
        observer(o);
      }
    }
  };

  const auto threads = static_cast<std::size_t>(std::max(1, sweep.parallelism));
  const std::size_t n_workers = std::min(threads, std::max<std::size_t>(points.size(), 1));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  }

  write_manifest(outcomes, root / "manifest.csv");
  return outcomes;
}

}  // namespace opgrowth
