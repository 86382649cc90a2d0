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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lattice_laws.hpp"
#include "scenario.hpp"
#include "sidlab/io.hpp"
#include "sidlab/sidlab.hpp"

namespace sidlab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitWindow = 3,
  kExitLawViolation = 4,
  kExitDegenerate = 5,
};

/// SIDLAB_TOL overrides the default lattice tolerance.
inline double tolerance_from_env(double fallback = kLatticeTol) {
  const char* raw = std::getenv("SIDLAB_TOL");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0)) throw ConfigError(std::string("invalid SIDLAB_TOL '") + raw + "'");
  return v;
}

namespace detail {

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

inline std::string series_csv(const ExpectationSeries& s) {
  std::ostringstream os;
  io::write_series_csv(os, s);
  return os.str();
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const WindowGuardError& e) {
    err << "error: " << e.what() << '\n';
    return kExitWindow;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const sidlab::Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::WindowExceeded ? kExitWindow : kExitConfig;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace detail

/// Writes <D(t)> as `t,re,im,abs` rows.
inline int run_simulate(const std::string& config_path, const std::optional<std::string>& out_path,
                        std::ostream& err = std::cerr) {
  return detail::guarded(err, [&] {
    const auto config = load_scenario(config_path);
    const auto out = out_path ? out_path : config.series_path;
    if (!out) throw ConfigError("no output path: pass --out or set output.series");
    const auto sc = build_scenario(config);
    for (const auto& w : sc.warnings) err << "warning: " << w << '\n';
    const auto d = incompatibility_observable(sc.o1, sc.o2);
    const auto series = expectation_series(sc.state, d, config.t_max, config.n_samples);
    detail::write_file(*out, detail::series_csv(series));
    return static_cast<int>(kExitOk);
  });
}

/// Law suite, compatibility matrix, Boolean verdict and optional Kolmogorov
/// residuals for the lattice generated by the input subspaces.
inline int run_lattice(const std::string& input_path, const std::optional<std::string>& state_path,
                       const std::string& report_path, std::size_t max_elements = kDefaultMaxLatticeElements,
                       std::ostream& err = std::cerr) {
  return detail::guarded(err, [&] {
    const double tol = tolerance_from_env();
    io::SubspaceDocument doc;
    std::optional<DensityState> state;
    try {
      doc = io::subspace_document_from_json(detail::read_json_file(input_path));
      if (state_path) state = io::density_state_from_json(detail::read_json_file(*state_path));
    } catch (const sidlab::Error& e) {
      throw ConfigError(e.what());
    }
    if (state && state->dim() != doc.dim) throw ConfigError("state dimension differs from subspace dimension");

    const auto lat = generate_lattice(doc.dim, doc.elements, max_elements, tol);
    const auto laws = run_law_suite(lat, tol);

    json report;
    report["dim"] = doc.dim;
    report["tolerance"] = tol;
    report["input_elements"] = doc.elements.size();
    report["lattice_size"] = lat.size();
    report["closed"] = lat.closed();
    json law_json = json::object();
    for (const auto& l : laws.laws)
      law_json[l.name] = {{"passed", l.passed()}, {"checked", l.checked}, {"failures", l.failures}};
    report["laws"] = law_json;
    report["all_laws_hold"] = laws.all_passed();

    json ranks = json::array();
    for (const auto& e : lat.elements()) ranks.push_back(e.rank());
    report["element_ranks"] = ranks;
    report["elements"] = io::to_json(io::SubspaceDocument{doc.dim, lat.elements()})["elements"];

    if (lat.closed()) {
      const auto analysis = analyze_boolean(lat, tol);
      report["compatibility_matrix"] = analysis.compatibility;
      report["boolean"] = analysis.boolean;
      report["max_distributivity_defect"] = analysis.max_defect;
      if (state) {
        const auto k = kolmogorov_check(*state, lat, tol);
        json violations = json::array();
        for (const auto& v : k.violations) violations.push_back({{"a", v.a}, {"b", v.b}, {"residual", v.residual}});
        report["kolmogorov"] = {{"max_residual", k.max_residual}, {"violations", violations}};
      }
    } else {
      report["compatibility_matrix"] = nullptr;
      report["boolean"] = nullptr;
      err << "warning: lattice closure exceeded " << max_elements << " elements; Boolean analysis skipped\n";
    }
    detail::write_file(report_path, report.dump(2) + "\n");
    return static_cast<int>(laws.all_passed() ? kExitOk : kExitLawViolation);
  });
}

/// End-to-end run: EmergenceReport JSON plus the series CSV.
inline int run_emerge(const std::string& config_path, const std::optional<std::string>& report_path,
                      const std::optional<std::string>& series_path, std::ostream& err = std::cerr) {
  return detail::guarded(err, [&] {
    const auto config = load_scenario(config_path);
    if (!config.n_bins) throw ConfigError("missing 'partition' block");
    if (!config.epsilon && !config.epsilon_relative)
      throw ConfigError("missing 'thresholds.epsilon' (or 'thresholds.epsilon_relative')");
    const auto report_out = report_path ? report_path : config.report_path;
    const auto series_out = series_path ? series_path : config.series_path;
    if (!report_out || !series_out) throw ConfigError("pass --report and --series or set them under 'output'");

    const auto sc = build_scenario(config);
    for (const auto& w : sc.warnings) err << "warning: " << w << '\n';
    const auto partition = BinPartition::equal_bins(sc.grid, *config.n_bins);

    double epsilon = config.epsilon.value_or(0.0);
    if (config.epsilon_relative) {
      const auto d = incompatibility_observable(sc.o1, sc.o2);
      const double initial = std::abs(expectation(sc.state, d, 0.0));
      epsilon = *config.epsilon_relative * initial;
      if (!(epsilon > 0.0)) epsilon = std::numeric_limits<double>::min();
    }
    EmergenceOptions options;
    options.threshold_ratio = config.decoherence_ratio;
    options.sustain = config.sustain;
    options.lattice_tol = tolerance_from_env();
    const auto report = run_emergence(sc.state, sc.o1, sc.o2, partition, config.t_max, config.n_samples, epsilon,
                                      options);
    json j = io::to_json(report);
    j["epsilon"] = epsilon;
    detail::write_file(*report_out, j.dump(2) + "\n");
    detail::write_file(*series_out, detail::series_csv(report.series));
    return static_cast<int>(report.verdict == Verdict::Degenerate ? kExitDegenerate : kExitOk);
  });
}

inline std::vector<double> parse_time_list(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("invalid time value '" + item + "'");
    }
    if (used != item.size()) throw ConfigError("invalid time value '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty time list");
  return out;
}

/// Closed-form normalized decay |<D(t)>/<D(0)>|. Params either carry the
/// combined width ({"sigma_c": x} / {"gamma_c": x}) or the two kernel specs
/// ({"rho": {...}, "D": {...}}) whose family is taken from --family.
inline int run_oracle(const std::string& family_tag, const std::string& params_text, const std::string& times_text,
                      std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return detail::guarded(err, [&] {
    json params;
    try {
      params = json::parse(params_text);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("malformed --params JSON: ") + e.what());
    }
    const auto times = parse_time_list(times_text);
    KernelFamily family;
    try {
      family = kernel_family_from_string(family_tag);
    } catch (const sidlab::Error& e) {
      throw ConfigError(e.what());
    }
    std::vector<double> values;
    try {
      if (params.contains("rho") && params.contains("D")) {
        json rho = params.at("rho"), d = params.at("D");
        rho["family"] = family_tag;
        d["family"] = family_tag;
        values = analytic_oracle(io::kernel_spec_from_json(rho), io::kernel_spec_from_json(d), times);
      } else if (family == KernelFamily::GaussianBand && params.contains("sigma_c")) {
        for (double t : times) values.push_back(gaussian_decay(params.at("sigma_c").get<double>(), t));
      } else if (family == KernelFamily::LorentzBand && params.contains("gamma_c")) {
        for (double t : times) values.push_back(lorentz_decay(params.at("gamma_c").get<double>(), t));
      } else {
        throw ConfigError("params need {\"rho\", \"D\"} specs or the combined width for this family");
      }
    } catch (const sidlab::Error& e) {
      throw ConfigError(e.what());
    }
    out << "t,value\n";
    for (std::size_t i = 0; i < times.size(); ++i)
      out << io::format_number(times[i]) << ',' << io::format_number(values[i]) << '\n';
    return static_cast<int>(kExitOk);
  });
}

}  // namespace sidlab::cli
