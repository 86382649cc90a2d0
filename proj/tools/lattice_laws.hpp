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

// Orthocomplemented-lattice law suite over the elements of a generated
// lattice, as reported by `sidlab lattice`.

#include <string>
#include <vector>

#include "json.hpp"
#include "sidlab/lattice.hpp"

namespace sidlab::cli {

struct LawResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  bool passed() const { return failures == 0; }
};

struct LawSuite {
  std::vector<LawResult> laws;
  bool all_passed() const {
    for (const auto& l : laws)
      if (!l.passed()) return false;
    return true;
  }
};

/// Pairwise operations are tabulated once; triple laws reuse them.
inline LawSuite run_law_suite(const PropertyLattice& lat, double tol) {
  const auto& e = lat.elements();
  const std::size_t n = lat.size();
  const std::size_t d = lat.ambient_dim();
  const Subspace zero = Subspace::zero(d), full = Subspace::full(d);

  std::vector<Subspace> orth;
  orth.reserve(n);
  for (const auto& x : e) orth.push_back(ortho(x));
  std::vector<Subspace> meets, joins;
  meets.reserve(n * n);
  joins.reserve(n * n);
  std::vector<char> below(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      meets.push_back(meet(e[i], e[j]));
      joins.push_back(join(e[i], e[j]));
      below[i * n + j] = leq(e[i], e[j], tol);
    }
  auto M = [&](std::size_t i, std::size_t j) -> const Subspace& { return meets[i * n + j]; };
  auto J = [&](std::size_t i, std::size_t j) -> const Subspace& { return joins[i * n + j]; };
  auto L = [&](std::size_t i, std::size_t j) { return below[i * n + j] != 0; };

  LawResult order{"order"}, involution{"involution"}, reversal{"order_reversal"}, contradiction{"meet_with_complement"},
      middle{"join_with_complement"}, de_morgan{"de_morgan"}, orthomodular{"orthomodular"}, glb{"glb"}, lub{"lub"},
      distributive{"distributive_inclusions"};
  auto tally = [](LawResult& r, bool ok) {
    ++r.checked;
    if (!ok) ++r.failures;
  };

  for (std::size_t i = 0; i < n; ++i) {
    tally(order, L(i, i));
    tally(involution, equal(ortho(orth[i]), e[i], tol));
    tally(contradiction, equal(meet(e[i], orth[i]), zero, tol));
    tally(middle, equal(join(e[i], orth[i]), full, tol));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) tally(order, !(L(i, j) && L(j, i)) || equal(e[i], e[j], tol));
      if (L(i, j)) {
        tally(reversal, leq(orth[j], orth[i], tol));
        tally(orthomodular, equal(e[j], join(e[i], meet(e[j], orth[i])), tol));
      }
      tally(de_morgan, equal(ortho(J(i, j)), meet(orth[i], orth[j]), tol));
      tally(glb, leq(M(i, j), e[i], tol) && leq(M(i, j), e[j], tol));
      tally(lub, leq(e[i], J(i, j), tol) && leq(e[j], J(i, j), tol));
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        tally(order, !(L(a, b) && L(b, c)) || L(a, c));
        if (L(c, a) && L(c, b)) tally(glb, leq(e[c], M(a, b), tol));
        if (L(a, c) && L(b, c)) tally(lub, leq(J(a, b), e[c], tol));
        const bool lower = leq(join(M(a, b), M(a, c)), meet(e[a], J(b, c)), tol);
        const bool upper = leq(join(e[a], M(b, c)), meet(J(a, b), J(a, c)), tol);
        tally(distributive, lower && upper);
      }

  return LawSuite{{order, involution, reversal, contradiction, middle, de_morgan, orthomodular, glb, lub, distributive}};
}

}  // namespace sidlab::cli
