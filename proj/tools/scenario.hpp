// Copyright 2026 The sidlab Authors
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

// Scenario configuration for the simulate and emerge subcommands. Every
// constituent precondition is validated while loading, before any kernel is
// built.

#include <fstream>
#include <optional>
#include <string>

#include "json.hpp"
#include "sidlab/io.hpp"
#include "sidlab/sidlab.hpp"

namespace sidlab::cli {

using json = nlohmann::json;

/// Unreadable or schema-invalid configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// t_max beyond the window guard (exit code 3).
class WindowGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ObservableConfig {
  std::optional<DiagonalFamilySpec> diag;
  std::optional<KernelFamilySpec> kernel;
};

struct ScenarioConfig {
  double omega_max = 0.0;
  std::size_t n_points = 0;
  DiagonalFamilySpec state_diag;
  std::optional<KernelFamilySpec> state_kernel;
  ObservableConfig o1, o2;
  double t_max = 0.0;
  std::size_t n_samples = 0;
  double decoherence_ratio = kDefaultDecoherenceRatio;
  std::size_t sustain = kDefaultSustain;
  std::optional<double> epsilon;
  std::optional<double> epsilon_relative;
  std::optional<std::size_t> n_bins;
  std::optional<std::string> series_path;
  std::optional<std::string> report_path;
};

namespace detail {

inline const json& require(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key))
    throw ConfigError(std::string("missing '") + key + "' in " + where);
  return j.at(key);
}

inline double positive_number(const json& j, const char* key, const char* where) {
  const auto& v = require(j, key, where);
  if (!v.is_number() || !(v.get<double>() > 0.0))
    throw ConfigError(std::string("'") + key + "' in " + where + " must be a positive number");
  return v.get<double>();
}

inline std::size_t count(const json& j, const char* key, const char* where) {
  const auto& v = require(j, key, where);
  if (!v.is_number_unsigned()) throw ConfigError(std::string("'") + key + "' in " + where + " must be a non-negative integer");
  return v.get<std::size_t>();
}

inline ObservableConfig observable(const json& j, const char* name) {
  if (!j.is_object()) throw ConfigError(std::string("observable ") + name + " must be an object");
  ObservableConfig o;
  if (j.contains("diag")) o.diag = io::diagonal_spec_from_json(j.at("diag"));
  if (j.contains("kernel")) o.kernel = io::kernel_spec_from_json(j.at("kernel"));
  if (!o.diag && !o.kernel) throw ConfigError(std::string("observable ") + name + " needs 'diag' and/or 'kernel'");
  return o;
}

}  // namespace detail

inline ScenarioConfig parse_scenario(const json& j) {
  ScenarioConfig c;
  try {
    const auto& grid = detail::require(j, "grid", "config");
    c.omega_max = detail::positive_number(grid, "omega_max", "grid");
    c.n_points = detail::count(grid, "n_points", "grid");
    const auto g = make_grid(c.omega_max, c.n_points);

    const auto& state = detail::require(j, "state", "config");
    c.state_diag = io::diagonal_spec_from_json(detail::require(state, "diag", "state"));
    if (!state.at("diag").contains("normalize")) c.state_diag.normalize = true;
    if (state.contains("kernel")) c.state_kernel = io::kernel_spec_from_json(state.at("kernel"));

    const auto& obs = detail::require(j, "observables", "config");
    c.o1 = detail::observable(detail::require(obs, "O1", "observables"), "O1");
    c.o2 = detail::observable(detail::require(obs, "O2", "observables"), "O2");

    const auto& time = detail::require(j, "time", "config");
    c.t_max = detail::positive_number(time, "t_max", "time");
    c.n_samples = detail::count(time, "n_samples", "time");
    if (c.n_samples < 2) throw ConfigError("'n_samples' in time must be at least 2");

    if (j.contains("thresholds")) {
      const auto& th = j.at("thresholds");
      if (!th.is_object()) throw ConfigError("'thresholds' must be an object");
      if (th.contains("decoherence_ratio")) {
        c.decoherence_ratio = detail::positive_number(th, "decoherence_ratio", "thresholds");
        if (!(c.decoherence_ratio < 1.0)) throw ConfigError("'decoherence_ratio' must lie in (0, 1)");
      }
      if (th.contains("sustain")) {
        c.sustain = detail::count(th, "sustain", "thresholds");
        if (c.sustain < 1) throw ConfigError("'sustain' must be at least 1");
      }
      if (th.contains("epsilon")) c.epsilon = detail::positive_number(th, "epsilon", "thresholds");
      if (th.contains("epsilon_relative"))
        c.epsilon_relative = detail::positive_number(th, "epsilon_relative", "thresholds");
    }
    if (j.contains("partition")) {
      c.n_bins = detail::count(j.at("partition"), "n_bins", "partition");
      if (*c.n_bins < 1 || *c.n_bins > c.n_points) throw ConfigError("'n_bins' must lie in [1, n_points]");
    }
    if (j.contains("output")) {
      const auto& out = j.at("output");
      if (out.contains("series") && out.at("series").is_string()) c.series_path = out.at("series").get<std::string>();
      if (out.contains("report") && out.at("report").is_string()) c.report_path = out.at("report").get<std::string>();
    }

    const double recurrence = g.recurrence_time();
    if (c.t_max > 0.5 * recurrence)
      throw WindowGuardError("t_max " + io::format_number(c.t_max) + " exceeds half the recurrence time (recurrence time " +
                             io::format_number(recurrence) + ", limit " + io::format_number(0.5 * recurrence) + ")");
  } catch (const sidlab::Error& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
  return c;
}

inline ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("malformed config '" + path + "': " + e.what());
  }
  return parse_scenario(j);
}

struct Scenario {
  FrequencyGrid grid;
  VanHoveState state;
  VanHoveObservable o1, o2;
  std::vector<std::string> warnings;
};

inline VanHoveObservable build_observable(const FrequencyGrid& g, const ObservableConfig& c,
                                          std::vector<std::string>* warnings) {
  auto diag = c.diag ? build_diagonal(g, *c.diag) : DiagonalPart::zero(g);
  auto kernel = c.kernel ? build_kernel(g, *c.kernel, warnings) : RegularKernel::zero(g);
  return VanHoveObservable(std::move(diag), std::move(kernel));
}

inline Scenario build_scenario(const ScenarioConfig& c) {
  try {
    const auto g = make_grid(c.omega_max, c.n_points);
    std::vector<std::string> warnings;
    VanHoveState state(build_diagonal(g, c.state_diag),
                       c.state_kernel ? build_kernel(g, *c.state_kernel, &warnings) : RegularKernel::zero(g));
    auto o1 = build_observable(g, c.o1, &warnings);
    auto o2 = build_observable(g, c.o2, &warnings);
    return Scenario{g, std::move(state), std::move(o1), std::move(o2), std::move(warnings)};
  } catch (const sidlab::Error& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace sidlab::cli
