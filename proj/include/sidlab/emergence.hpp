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

// Links the decay of <D(t)> to the Booleanization of the property structure:
// the continuous incompatibility-versus-angle sweep, observational
// compatibility at a threshold, and the commuting pointer lattice spanned by
// the phase-free diagonal sector.

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "sidlab/error.hpp"
#include "sidlab/lattice.hpp"
#include "sidlab/sid.hpp"
#include "sidlab/spectral.hpp"

namespace sidlab {

struct AngleSweepRow {
  double theta = 0.0;
  double incompatibility_norm = 0.0;
  std::size_t meet_rank = 0;
  double distributivity_defect = 0.0;
};

/// a = span{e0}, b = span{cos(theta) e0 + sin(theta) e1} in C^2; the defect
/// column is the meet-over-join defect of the triple (a, b, b').
inline std::vector<AngleSweepRow> angle_sweep(std::span<const double> thetas) {
  std::vector<AngleSweepRow> rows;
  rows.reserve(thetas.size());
  ComplexVector e0(2);
  e0 << 1.0, 0.0;
  const Subspace a = from_vectors(2, {e0});
  for (double theta : thetas) {
    if (!(theta >= 0.0 && theta <= 0.5 * std::numbers::pi))
      throw Error(ErrorKind::InvalidParameter, "angle_sweep: theta must lie in [0, pi/2]");
    ComplexVector v(2);
    v << std::cos(theta), std::sin(theta);
    const Subspace b = from_vectors(2, {v});
    rows.push_back({theta, incompatibility_norm(a, b), meet(a, b).rank(),
                    distributivity_defect(a, b, ortho(b)).meet_over_join});
  }
  return rows;
}

/// First sampled time after which |<D(t)>| <= epsilon for every remaining sample.
inline std::optional<double> effective_compatibility(const ExpectationSeries& series, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidParameter, "epsilon must be positive");
  const auto& v = series.values();
  std::size_t first = v.size();
  while (first > 0 && std::abs(v[first - 1]) <= epsilon) --first;
  if (first == v.size()) return std::nullopt;
  return series.times()[first];
}

/// Contiguous bins over node indices: bin b covers [edges[b], edges[b+1]).
class BinPartition {
 public:
  BinPartition(FrequencyGrid grid, std::vector<std::size_t> edges) : grid_(std::move(grid)), edges_(std::move(edges)) {
    if (edges_.size() < 2 || edges_.front() != 0 || edges_.back() != grid_.size())
      throw Error(ErrorKind::InvalidParameter, "bin edges must start at 0 and end at n_points");
    for (std::size_t b = 1; b < edges_.size(); ++b)
      if (!(edges_[b] > edges_[b - 1])) throw Error(ErrorKind::InvalidParameter, "bin edges must strictly increase");
  }

  static BinPartition equal_bins(const FrequencyGrid& grid, std::size_t n_bins) {
    if (n_bins < 1 || n_bins > grid.size())
      throw Error(ErrorKind::InvalidParameter, "n_bins must lie in [1, n_points]");
    std::vector<std::size_t> edges(n_bins + 1);
    for (std::size_t b = 0; b <= n_bins; ++b) edges[b] = b * grid.size() / n_bins;
    return BinPartition(grid, std::move(edges));
  }

  const FrequencyGrid& grid() const noexcept { return grid_; }
  const std::vector<std::size_t>& edges() const noexcept { return edges_; }
  std::size_t bin_count() const noexcept { return edges_.size() - 1; }

  std::size_t bin_of(std::size_t k) const {
    for (std::size_t b = 0; b + 1 < edges_.size(); ++b)
      if (k < edges_[b + 1]) return b;
    throw Error(ErrorKind::InvalidParameter, "node index outside the grid");
  }

 private:
  FrequencyGrid grid_;
  std::vector<std::size_t> edges_;
};

inline constexpr std::size_t kPointerLatticeMaxDim = 64;

/// Boolean algebra generated by the bin indicator projectors. Grids finer than
/// 64 nodes are decimated: reduced index j stands for the node at
/// floor((j + 1/2) n / m).
inline PropertyLattice pointer_lattice(std::span<const VanHoveObservable> observables, const BinPartition& partition,
                                       std::size_t max_elements = kDefaultMaxLatticeElements) {
  for (const auto& o : observables) require_same_grid(o.grid(), partition.grid(), "pointer_lattice");
  const std::size_t n = partition.grid().size();
  const std::size_t m = std::min(n, kPointerLatticeMaxDim);
  const auto md = static_cast<Eigen::Index>(m);

  std::vector<Subspace> seeds;
  for (std::size_t b = 0; b < partition.bin_count(); ++b) {
    std::vector<Eigen::Index> members;
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t node = ((2 * j + 1) * n) / (2 * m);
      if (partition.bin_of(node) == b) members.push_back(static_cast<Eigen::Index>(j));
    }
    if (members.empty()) continue;
    ComplexMatrix basis = ComplexMatrix::Zero(md, static_cast<Eigen::Index>(members.size()));
    for (std::size_t c = 0; c < members.size(); ++c) basis(members[c], static_cast<Eigen::Index>(c)) = 1.0;
    seeds.push_back(Subspace::from_orthonormal(m, std::move(basis)));
  }
  auto lat = generate_lattice(m, seeds, max_elements);
  if (!lat.closed()) throw Error(ErrorKind::LatticeTooLarge, "pointer lattice exceeds max_elements");
  return lat;
}

// ---------------------------------------------------------------------------

enum class Verdict { Booleanized, NotReached, Degenerate };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Booleanized: return "BOOLEANIZED";
    case Verdict::NotReached: return "NOT_REACHED";
    case Verdict::Degenerate: return "DEGENERATE";
  }
  return "UNKNOWN";
}

struct EmergenceReport {
  ExpectationSeries series;
  std::optional<double> decoherence_time;
  std::optional<double> effective_compatibility_time;
  double hs_norm_initial = 0.0;
  double hs_norm_final = 0.0;
  std::size_t pointer_lattice_size = 0;
  bool pointer_lattice_boolean = false;
  Verdict verdict = Verdict::NotReached;
};

struct EmergenceOptions {
  double threshold_ratio = kDefaultDecoherenceRatio;
  std::size_t sustain = kDefaultSustain;
  std::size_t max_lattice_elements = kDefaultMaxLatticeElements;
  double lattice_tol = kLatticeTol;
};

/// True when D is zero up to rounding relative to the size of its ingredients.
inline bool commutator_vanishes(const VanHoveObservable& o1, const VanHoveObservable& o2,
                                const IncompatibilityObservable& d) {
  if (d.is_zero()) return true;
  const double window = o1.grid().omega_max();
  const auto size = [window](const VanHoveObservable& o) {
    return o.diag().values().cwiseAbs().maxCoeff() + window * o.kernel().values().cwiseAbs().maxCoeff();
  };
  const double scale = size(o1) * o2.kernel().values().cwiseAbs().maxCoeff() +
                       size(o2) * o1.kernel().values().cwiseAbs().maxCoeff();
  return d.kernel().values().cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

inline EmergenceReport run_emergence(const VanHoveState& rho, const VanHoveObservable& o1,
                                     const VanHoveObservable& o2, const BinPartition& partition, double t_max,
                                     std::size_t n_samples, double epsilon, const EmergenceOptions& options = {}) {
  require_same_grid(rho.grid(), o1.grid(), "run_emergence");
  require_same_grid(rho.grid(), o2.grid(), "run_emergence");
  require_same_grid(rho.grid(), partition.grid(), "run_emergence");
  if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidParameter, "epsilon must be positive");

  const auto d = incompatibility_observable(o1, o2);
  auto series = expectation_series(rho, d, t_max, n_samples);

  const std::vector<VanHoveObservable> observables{o1, o2};
  const auto lattice = pointer_lattice(observables, partition, options.max_lattice_elements);

  EmergenceReport report{std::move(series)};
  report.decoherence_time = decoherence_time(report.series, options.threshold_ratio, options.sustain);
  report.effective_compatibility_time = effective_compatibility(report.series, epsilon);
  report.hs_norm_initial = hs_norm(d.kernel());
  report.hs_norm_final = hs_norm(evolve(d.kernel(), report.series.times().back()));
  report.pointer_lattice_size = lattice.size();
  report.pointer_lattice_boolean = is_boolean(lattice, options.lattice_tol);

  if (commutator_vanishes(o1, o2, d))
    report.verdict = Verdict::Degenerate;
  else if (report.decoherence_time && report.effective_compatibility_time && report.pointer_lattice_boolean)
    report.verdict = Verdict::Booleanized;
  else
    report.verdict = Verdict::NotReached;
  return report;
}

}  // namespace sidlab
