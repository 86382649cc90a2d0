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

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace sidlab::cli;
  CLI::App app{"sidlab: self-induced decoherence and property-lattice toolkit"};
  app.require_subcommand(1);

  std::string config, out, in, state, report, series, family, params, times;
  std::size_t max_elements = sidlab::kDefaultMaxLatticeElements;

  auto* simulate = app.add_subcommand("simulate", "write the <D(t)> series as CSV");
  simulate->add_option("--config", config, "scenario JSON")->required();
  simulate->add_option("--out", out, "CSV output path");

  auto* lattice = app.add_subcommand("lattice", "lattice law suite and Boolean analysis");
  lattice->add_option("--in", in, "subspace JSON document")->required();
  lattice->add_option("--state", state, "density state JSON document");
  lattice->add_option("--report", report, "JSON report path")->required();
  lattice->add_option("--max-elements", max_elements, "closure cap");

  auto* emerge = app.add_subcommand("emerge", "end-to-end decoherence and Booleanization report");
  emerge->add_option("--config", config, "scenario JSON")->required();
  emerge->add_option("--report", report, "JSON report path");
  emerge->add_option("--series", series, "CSV series path");

  auto* oracle = app.add_subcommand("oracle", "closed-form normalized decay profiles");
  oracle->add_option("--family", family, "gaussian_band or lorentz_band")->required();
  oracle->add_option("--params", params, "JSON parameters")->required();
  oracle->add_option("--t", times, "comma-separated times")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  auto opt = [](const std::string& s) { return s.empty() ? std::nullopt : std::optional<std::string>(s); };
  if (simulate->parsed()) return run_simulate(config, opt(out));
  if (lattice->parsed()) return run_lattice(in, opt(state), report, max_elements);
  if (emerge->parsed()) return run_emerge(config, opt(report), opt(series));
  if (oracle->parsed()) return run_oracle(family, params, times);
  return kExitConfig;
}
