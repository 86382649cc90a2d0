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

// JSON and CSV surfaces: kernel/diagonal family specs, subspace and density
// documents, emergence reports, and the `t,re,im,abs` series format.

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sidlab/emergence.hpp"
#include "sidlab/lattice.hpp"
#include "sidlab/sid.hpp"
#include "sidlab/spectral.hpp"

namespace sidlab::io {

using json = nlohmann::json;

namespace detail {

inline double number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number()) throw Error(ErrorKind::InvalidDocument, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

inline std::complex<double> complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorKind::InvalidDocument, "complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

inline ComplexVector vector_from_json(const json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim)
    throw Error(ErrorKind::InvalidDocument, "column vector must have exactly dim entries");
  ComplexVector v(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

}  // namespace detail

inline json to_json(const KernelFamilySpec& s) {
  json j{{"family", std::string(to_string(s.family))},
         {"amplitude", s.amplitude},
         {"sigma", s.sigma},
         {"mu", s.mu},
         {"Sigma", s.envelope_width}};
  if (s.family == KernelFamily::RandomBandlimited) j["seed"] = s.seed;
  if (s.delay != 0.0) j["delay"] = s.delay;
  return j;
}

/// {"family", "amplitude", "sigma" (or "gamma"), "mu", "Sigma", "seed", "delay"}
inline KernelFamilySpec kernel_spec_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidDocument, "kernel spec must be an object");
  if (!j.contains("family") || !j.at("family").is_string())
    throw Error(ErrorKind::InvalidDocument, "kernel spec needs a string 'family'");
  KernelFamilySpec s;
  s.family = kernel_family_from_string(j.at("family").get<std::string>());
  s.amplitude = detail::number(j, "amplitude", s.amplitude);
  s.sigma = detail::number(j, "gamma", detail::number(j, "sigma", s.sigma));
  s.mu = detail::number(j, "mu", s.mu);
  s.envelope_width = detail::number(j, "Sigma", s.envelope_width);
  s.delay = detail::number(j, "delay", s.delay);
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw Error(ErrorKind::InvalidDocument, "'seed' must be a non-negative integer");
    s.seed = j.at("seed").get<std::uint64_t>();
  }
  s.validate();
  return s;
}

/// {"family", "amplitude", "slope", "offset", "mu", "Sigma" (or "width"), "values", "normalize"}
inline DiagonalFamilySpec diagonal_spec_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidDocument, "diagonal spec must be an object");
  DiagonalFamilySpec s;
  if (j.contains("values") && !j.contains("family")) {
    s.family = DiagonalFamily::Samples;
  } else {
    if (!j.contains("family") || !j.at("family").is_string())
      throw Error(ErrorKind::InvalidDocument, "diagonal spec needs a string 'family'");
    s.family = diagonal_family_from_string(j.at("family").get<std::string>());
  }
  s.amplitude = detail::number(j, "amplitude", s.amplitude);
  s.slope = detail::number(j, "slope", s.slope);
  s.offset = detail::number(j, "offset", s.offset);
  s.mu = detail::number(j, "mu", s.mu);
  s.width = detail::number(j, "width", detail::number(j, "Sigma", s.width));
  if (j.contains("values")) {
    const auto& v = j.at("values");
    if (!v.is_array()) throw Error(ErrorKind::InvalidDocument, "'values' must be an array");
    for (const auto& x : v) {
      if (!x.is_number()) throw Error(ErrorKind::InvalidDocument, "'values' entries must be numbers");
      s.values.push_back(x.get<double>());
    }
  }
  if (j.contains("normalize")) {
    if (!j.at("normalize").is_boolean()) throw Error(ErrorKind::InvalidDocument, "'normalize' must be a boolean");
    s.normalize = j.at("normalize").get<bool>();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Subspace documents: {"dim": d, "elements": [[column, ...], ...]} where each
// column is a list of d [re, im] pairs.

struct SubspaceDocument {
  std::size_t dim = 0;
  std::vector<Subspace> elements;
};

inline SubspaceDocument subspace_document_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("elements"))
    throw Error(ErrorKind::InvalidDocument, "subspace document needs 'dim' and 'elements'");
  if (!j.at("dim").is_number_unsigned() || j.at("dim").get<std::size_t>() == 0)
    throw Error(ErrorKind::InvalidDocument, "'dim' must be a positive integer");
  SubspaceDocument doc;
  doc.dim = j.at("dim").get<std::size_t>();
  const auto& elements = j.at("elements");
  if (!elements.is_array()) throw Error(ErrorKind::InvalidDocument, "'elements' must be an array");
  for (const auto& element : elements) {
    if (!element.is_array()) throw Error(ErrorKind::InvalidDocument, "each element must be a list of column vectors");
    std::vector<ComplexVector> columns;
    for (const auto& col : element) columns.push_back(detail::vector_from_json(col, doc.dim));
    doc.elements.push_back(from_vectors(doc.dim, columns));
  }
  return doc;
}

inline json subspace_to_json(const Subspace& s) {
  json cols = json::array();
  for (Eigen::Index c = 0; c < s.basis().cols(); ++c) {
    json col = json::array();
    for (Eigen::Index r = 0; r < s.basis().rows(); ++r) col.push_back(detail::complex_to_json(s.basis()(r, c)));
    cols.push_back(std::move(col));
  }
  return cols;
}

inline json to_json(const SubspaceDocument& doc) {
  json elements = json::array();
  for (const auto& e : doc.elements) elements.push_back(subspace_to_json(e));
  return json{{"dim", doc.dim}, {"elements", std::move(elements)}};
}

/// {"dim": d, "rho": [[[re, im], ...], ...]} (row-major) or {"dim": d, "vector": [[re, im], ...]} for a pure state.
inline DensityState density_state_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.at("dim").is_number_unsigned())
    throw Error(ErrorKind::InvalidDocument, "state document needs a positive integer 'dim'");
  const auto dim = j.at("dim").get<std::size_t>();
  if (dim == 0) throw Error(ErrorKind::InvalidDocument, "'dim' must be positive");
  if (j.contains("vector")) {
    ComplexVector v = detail::vector_from_json(j.at("vector"), dim);
    const double norm = v.norm();
    if (!(norm > 0.0)) throw Error(ErrorKind::InvalidDocument, "pure-state vector must be nonzero");
    return DensityState::pure(v / norm);
  }
  if (!j.contains("rho") || !j.at("rho").is_array() || j.at("rho").size() != dim)
    throw Error(ErrorKind::InvalidDocument, "'rho' must be a dim x dim array");
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix rho(n, n);
  for (std::size_t r = 0; r < dim; ++r) rho.row(static_cast<Eigen::Index>(r)) = detail::vector_from_json(j.at("rho")[r], dim).transpose();
  return DensityState(std::move(rho));
}

// ---------------------------------------------------------------------------

inline json optional_time(const std::optional<double>& t) { return t ? json(*t) : json(nullptr); }

inline json to_json(const ExpectationSeries& s) {
  json re = json::array(), im = json::array();
  for (const auto& v : s.values()) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return json{{"times", s.times()},
              {"re", std::move(re)},
              {"im", std::move(im)},
              {"initial_magnitude", s.initial_magnitude()},
              {"recurrence_time", s.recurrence_time()}};
}

inline json to_json(const EmergenceReport& r) {
  return json{{"verdict", std::string(to_string(r.verdict))},
              {"decoherence_time", optional_time(r.decoherence_time)},
              {"effective_compatibility_time", optional_time(r.effective_compatibility_time)},
              {"hs_norm_initial", r.hs_norm_initial},
              {"hs_norm_final", r.hs_norm_final},
              {"pointer_lattice_size", r.pointer_lattice_size},
              {"pointer_lattice_boolean", r.pointer_lattice_boolean},
              {"series", to_json(r.series)}};
}

/// 17 significant digits, '.' decimal separator, '\n' line endings.
inline std::string format_number(double x) {
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline void write_series_csv(std::ostream& out, const ExpectationSeries& s) {
  out << "t,re,im,abs\n";
  for (std::size_t j = 0; j < s.size(); ++j) {
    const auto v = s.values()[j];
    out << format_number(s.times()[j]) << ',' << format_number(v.real()) << ',' << format_number(v.imag()) << ','
        << format_number(std::abs(v)) << '\n';
  }
}

}  // namespace sidlab::io
