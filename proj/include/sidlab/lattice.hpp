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

// Orthocomplemented lattice of subspaces of C^d. A property is a subspace
// held by an orthonormal basis together with its orthogonal projector;
// every lattice identity is checked as ||P_x - P_y|| <= tol in spectral norm.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sidlab/error.hpp"

namespace sidlab {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kRankTol = 1e-10;
inline constexpr double kLatticeTol = 1e-8;
inline constexpr double kOrthonormalTol = 1e-10;
inline constexpr std::size_t kDefaultMaxLatticeElements = 256;

class Subspace {
 public:
  /// Takes ownership of an orthonormal d x r basis (r may be 0).
  static Subspace from_orthonormal(std::size_t ambient_dim, ComplexMatrix basis) {
    if (ambient_dim == 0) throw Error(ErrorKind::DimensionMismatch, "ambient dimension must be positive");
    if (basis.rows() != static_cast<Eigen::Index>(ambient_dim))
      throw Error(ErrorKind::DimensionMismatch, "basis rows must equal the ambient dimension");
    if (basis.cols() > 0) {
      const auto r = basis.cols();
      const double defect = (basis.adjoint() * basis - ComplexMatrix::Identity(r, r)).cwiseAbs().maxCoeff();
      if (defect > kOrthonormalTol) throw Error(ErrorKind::InvalidParameter, "basis columns are not orthonormal");
    }
    return Subspace(ambient_dim, std::move(basis));
  }

  static Subspace zero(std::size_t d) { return from_orthonormal(d, ComplexMatrix(static_cast<Eigen::Index>(d), 0)); }
  static Subspace full(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    return from_orthonormal(d, ComplexMatrix::Identity(n, n));
  }

  std::size_t ambient_dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return static_cast<std::size_t>(basis_.cols()); }
  bool is_zero() const noexcept { return basis_.cols() == 0; }
  bool is_full() const noexcept { return rank() == dim_; }
  const ComplexMatrix& basis() const noexcept { return basis_; }
  const ComplexMatrix& projector() const noexcept { return projector_; }

 private:
  Subspace(std::size_t d, ComplexMatrix basis)
      : dim_(d), basis_(std::move(basis)), projector_(basis_ * basis_.adjoint()) {}

  std::size_t dim_;
  ComplexMatrix basis_;
  ComplexMatrix projector_;
};

namespace detail {

inline void require_same_dim(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw Error(ErrorKind::DimensionMismatch, "subspaces live in different ambient dimensions");
}

/// Spectral norm of a Hermitian matrix.
inline double hermitian_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// Orthonormal basis of the column span, singular values below tol * largest dropped.
inline ComplexMatrix orthonormal_span(const ComplexMatrix& columns, double rank_tol = kRankTol) {
  const auto d = columns.rows();
  if (columns.cols() == 0 || columns.cwiseAbs().maxCoeff() == 0.0) return ComplexMatrix(d, 0);
  Eigen::JacobiSVD<ComplexMatrix> svd(columns, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rank_tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace detail

/// Orthonormalized span of possibly dependent vectors.
inline Subspace from_vectors(std::size_t ambient_dim, std::span<const ComplexVector> vectors) {
  const auto d = static_cast<Eigen::Index>(ambient_dim);
  ComplexMatrix columns(d, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != d) throw Error(ErrorKind::DimensionMismatch, "vector length != ambient dimension");
    columns.col(static_cast<Eigen::Index>(j)) = vectors[j];
  }
  return Subspace::from_orthonormal(ambient_dim, detail::orthonormal_span(columns));
}

inline Subspace from_vectors(std::size_t ambient_dim, std::initializer_list<ComplexVector> vectors) {
  return from_vectors(ambient_dim, std::span<const ComplexVector>(vectors.begin(), vectors.size()));
}

inline double projector_distance(const Subspace& a, const Subspace& b) {
  detail::require_same_dim(a, b);
  if (a.rank() != b.rank()) return 1.0;
  return detail::hermitian_norm(a.projector() - b.projector());
}

inline bool equal(const Subspace& a, const Subspace& b, double tol = kLatticeTol) {
  detail::require_same_dim(a, b);
  if (a.rank() != b.rank()) return false;
  const ComplexMatrix diff = a.projector() - b.projector();
  const double frob = diff.norm();
  if (frob <= tol) return true;
  if (frob > tol * std::sqrt(2.0 * static_cast<double>(a.ambient_dim()))) return false;
  return detail::hermitian_norm(diff) <= tol;
}

/// a <= b iff every basis vector of a lies in b.
inline bool leq(const Subspace& a, const Subspace& b, double tol = kLatticeTol) {
  detail::require_same_dim(a, b);
  if (a.is_zero() || b.is_full()) return true;
  if (a.rank() > b.rank()) return false;
  const ComplexMatrix residual = a.basis() - b.projector() * a.basis();
  return residual.cwiseAbs().maxCoeff() <= tol;
}

/// Intersection: eigenspace of P_a + P_b for eigenvalue 2.
inline Subspace meet(const Subspace& a, const Subspace& b) {
  detail::require_same_dim(a, b);
  if (a.is_zero() || b.is_full()) return a;
  if (b.is_zero() || a.is_full()) return b;
  if (leq(a, b)) return a;
  if (leq(b, a)) return b;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.projector() + b.projector());
  const auto& ev = es.eigenvalues();
  Eigen::Index first = ev.size();
  while (first > 0 && ev(first - 1) > 2.0 - kLatticeTol) --first;
  const auto r = ev.size() - first;
  ComplexMatrix basis = es.eigenvectors().rightCols(r);
  return Subspace::from_orthonormal(a.ambient_dim(), std::move(basis));
}

/// Span of the union.
inline Subspace join(const Subspace& a, const Subspace& b) {
  detail::require_same_dim(a, b);
  if (a.is_zero() || b.is_full()) return b;
  if (b.is_zero() || a.is_full()) return a;
  if (leq(a, b)) return b;
  if (leq(b, a)) return a;
  ComplexMatrix columns(static_cast<Eigen::Index>(a.ambient_dim()), a.basis().cols() + b.basis().cols());
  columns << a.basis(), b.basis();
  return Subspace::from_orthonormal(a.ambient_dim(), detail::orthonormal_span(columns));
}

inline Subspace ortho(const Subspace& a) {
  const auto d = static_cast<Eigen::Index>(a.ambient_dim());
  const auto r = static_cast<Eigen::Index>(a.rank());
  if (r == 0) return Subspace::full(a.ambient_dim());
  if (r == d) return Subspace::zero(a.ambient_dim());
  Eigen::HouseholderQR<ComplexMatrix> qr(a.basis());
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  return Subspace::from_orthonormal(a.ambient_dim(), q.rightCols(d - r));
}

/// ||P_a P_b - P_b P_a||, in [0, 1/2]; zero iff the projectors commute.
inline double incompatibility_norm(const Subspace& a, const Subspace& b) {
  detail::require_same_dim(a, b);
  const ComplexMatrix pq = a.projector() * b.projector();
  const ComplexMatrix comm = pq - pq.adjoint();
  return detail::hermitian_norm(std::complex<double>(0.0, 1.0) * comm);
}

struct CompatibilityCriteria {
  bool lattice = false;      // a = (a ^ b) v (a ^ b'), and symmetrically
  bool commutation = false;  // incompatibility_norm <= tol
  double norm = 0.0;
};

inline CompatibilityCriteria compatibility_criteria(const Subspace& a, const Subspace& b, double tol = kLatticeTol) {
  detail::require_same_dim(a, b);
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "tolerance must be positive");
  const auto decomposes = [tol](const Subspace& x, const Subspace& y) {
    return equal(x, join(meet(x, y), meet(x, ortho(y))), tol);
  };
  CompatibilityCriteria c;
  c.lattice = decomposes(a, b) && decomposes(b, a);
  c.norm = incompatibility_norm(a, b);
  c.commutation = c.norm <= tol;
  return c;
}

/// Lattice-theoretic compatibility. Agreement with commutation of the
/// projectors is established by the property suites, see compatibility_criteria.
inline bool is_compatible(const Subspace& a, const Subspace& b, double tol = kLatticeTol) {
  return compatibility_criteria(a, b, tol).lattice;
}

struct DistributivityDefect {
  double meet_over_join = 0.0;  // || a ^ (b v c)  -  (a ^ b) v (a ^ c) ||
  double join_over_meet = 0.0;  // || a v (b ^ c)  -  (a v b) ^ (a v c) ||
};

inline DistributivityDefect distributivity_defect(const Subspace& a, const Subspace& b, const Subspace& c) {
  detail::require_same_dim(a, b);
  detail::require_same_dim(a, c);
  DistributivityDefect out;
  out.meet_over_join = projector_distance(meet(a, join(b, c)), join(meet(a, b), meet(a, c)));
  out.join_over_meet = projector_distance(join(a, meet(b, c)), meet(join(a, b), join(a, c)));
  return out;
}

// ---------------------------------------------------------------------------

class PropertyLattice {
 public:
  PropertyLattice(std::size_t ambient_dim, std::vector<Subspace> elements, bool closed)
      : dim_(ambient_dim), elements_(std::move(elements)), closed_(closed) {
    for (const auto& e : elements_)
      if (e.ambient_dim() != dim_) throw Error(ErrorKind::DimensionMismatch, "lattice element dimension mismatch");
  }

  std::size_t ambient_dim() const noexcept { return dim_; }
  const std::vector<Subspace>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool closed() const noexcept { return closed_; }

  std::optional<std::size_t> index_of(const Subspace& s, double tol = kLatticeTol) const {
    for (std::size_t i = 0; i < elements_.size(); ++i)
      if (equal(elements_[i], s, tol)) return i;
    return std::nullopt;
  }

 private:
  std::size_t dim_;
  std::vector<Subspace> elements_;
  bool closed_;
};

/// Closure of {0, 1, seeds...} under meet, join and ortho, deduplicated at
/// `tol`. Stops with closed() == false once more than max_elements appear.
inline PropertyLattice generate_lattice(std::size_t ambient_dim, std::span<const Subspace> seeds,
                                        std::size_t max_elements = kDefaultMaxLatticeElements,
                                        double tol = kLatticeTol) {
  if (max_elements < 2) throw Error(ErrorKind::InvalidParameter, "max_elements must be at least 2");
  std::vector<Subspace> elements;
  auto insert = [&](Subspace s) {
    for (const auto& e : elements)
      if (equal(e, s, tol)) return;
    elements.push_back(std::move(s));
  };
  insert(Subspace::zero(ambient_dim));
  insert(Subspace::full(ambient_dim));
  for (const auto& s : seeds) {
    if (s.ambient_dim() != ambient_dim) throw Error(ErrorKind::DimensionMismatch, "seed dimension mismatch");
    insert(s);
  }

  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements.size() > max_elements) break;
    insert(ortho(elements[i]));
    for (std::size_t j = 0; j <= i && elements.size() <= max_elements; ++j) {
      const Subspace x = elements[i];
      const Subspace y = elements[j];
      insert(meet(x, y));
      insert(join(x, y));
    }
  }
  const bool closed = elements.size() <= max_elements;
  return PropertyLattice(ambient_dim, std::move(elements), closed);
}

namespace detail {

/// Meet/join tables of a closed lattice, as element indices.
struct LatticeTables {
  std::size_t n = 0;
  std::vector<std::optional<std::size_t>> meet, join;

  explicit LatticeTables(const PropertyLattice& lat, double tol) : n(lat.size()), meet(n * n), join(n * n) {
    const auto& e = lat.elements();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        meet[i * n + j] = meet[j * n + i] = lat.index_of(sidlab::meet(e[i], e[j]), tol);
        join[i * n + j] = join[j * n + i] = lat.index_of(sidlab::join(e[i], e[j]), tol);
      }
  }

  std::optional<std::size_t> m(std::size_t i, std::size_t j) const { return meet[i * n + j]; }
  std::optional<std::size_t> j(std::size_t a, std::size_t b) const { return join[a * n + b]; }
};

inline void require_closed(const PropertyLattice& lat) {
  if (!lat.closed()) throw Error(ErrorKind::NotClosed, "operation requires a closed lattice");
}

}  // namespace detail

struct BooleanAnalysis {
  bool boolean = false;
  bool all_compatible = false;
  bool distributive = false;
  double max_defect = 0.0;
  std::vector<std::vector<bool>> compatibility;  // pairwise is_compatible
};

/// Pairwise compatibility of every element and both distributive laws on
/// every triple. Triples are evaluated through the lattice's own meet/join
/// tables; entries that fall outside the lattice are recomputed directly.
inline BooleanAnalysis analyze_boolean(const PropertyLattice& lat, double tol = kLatticeTol) {
  detail::require_closed(lat);
  const auto& e = lat.elements();
  const std::size_t n = lat.size();
  BooleanAnalysis out;
  out.compatibility.assign(n, std::vector<bool>(n, true));
  out.all_compatible = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const bool c = is_compatible(e[i], e[j], tol);
      out.compatibility[i][j] = out.compatibility[j][i] = c;
      out.all_compatible = out.all_compatible && c;
    }

  const detail::LatticeTables tab(lat, tol);
  auto distance = [&](std::size_t x, std::size_t y) { return x == y ? 0.0 : projector_distance(e[x], e[y]); };
  out.distributive = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const auto bc_join = tab.j(b, c), bc_meet = tab.m(b, c);
        const auto ab_meet = tab.m(a, b), ac_meet = tab.m(a, c);
        const auto ab_join = tab.j(a, b), ac_join = tab.j(a, c);
        std::optional<std::size_t> l1, r1, l2, r2;
        if (bc_join) l1 = tab.m(a, *bc_join);
        if (ab_meet && ac_meet) r1 = tab.j(*ab_meet, *ac_meet);
        if (bc_meet) l2 = tab.j(a, *bc_meet);
        if (ab_join && ac_join) r2 = tab.m(*ab_join, *ac_join);
        double defect;
        if (l1 && r1 && l2 && r2) {
          defect = std::max(distance(*l1, *r1), distance(*l2, *r2));
        } else {
          const auto d = distributivity_defect(e[a], e[b], e[c]);
          defect = std::max(d.meet_over_join, d.join_over_meet);
        }
        out.max_defect = std::max(out.max_defect, defect);
        if (defect > tol) out.distributive = false;
      }
  out.boolean = out.all_compatible && out.distributive;
  return out;
}

inline bool is_boolean(const PropertyLattice& lat, double tol = kLatticeTol) {
  return analyze_boolean(lat, tol).boolean;
}

// ---------------------------------------------------------------------------

inline constexpr double kDensityTol = 1e-10;

class DensityState {
 public:
  explicit DensityState(ComplexMatrix rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() == 0)
      throw Error(ErrorKind::DimensionMismatch, "density matrix must be square and non-empty");
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kDensityTol)
      throw Error(ErrorKind::InvalidState, "density matrix is not Hermitian");
    if (std::abs(rho_.trace() - std::complex<double>(1.0, 0.0)) > kDensityTol)
      throw Error(ErrorKind::InvalidState, "density matrix trace must be 1");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kDensityTol)
      throw Error(ErrorKind::InvalidState, "density matrix is not positive semidefinite");
  }

  /// |v><v| for a unit vector v.
  static DensityState pure(const ComplexVector& v) { return DensityState(v * v.adjoint()); }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(rho_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return rho_; }

 private:
  ComplexMatrix rho_;
};

/// tr(rho P_a), clamped into [0, 1].
inline double probability(const DensityState& state, const Subspace& a) {
  if (state.dim() != a.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "state and subspace dimension differ");
  const double p = (state.matrix() * a.projector()).trace().real();
  return std::clamp(p, 0.0, 1.0);
}

struct KolmogorovViolation {
  std::size_t a = 0, b = 0;
  double residual = 0.0;
};

struct KolmogorovReport {
  double max_residual = 0.0;
  std::vector<KolmogorovViolation> violations;
};

/// Additivity residual |P(a v b) + P(a ^ b) - P(a) - P(b)| over all pairs.
inline KolmogorovReport kolmogorov_check(const DensityState& state, const PropertyLattice& lat,
                                         double tol = kLatticeTol) {
  detail::require_closed(lat);
  if (state.dim() != lat.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "state and lattice dimension differ");
  const auto& e = lat.elements();
  const std::size_t n = lat.size();
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = probability(state, e[i]);
  const detail::LatticeTables tab(lat, tol);
  KolmogorovReport report;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto ji = tab.j(a, b), mi = tab.m(a, b);
      const double pj = ji ? p[*ji] : probability(state, join(e[a], e[b]));
      const double pm = mi ? p[*mi] : probability(state, meet(e[a], e[b]));
      const double r = std::abs(pj + pm - p[a] - p[b]);
      report.max_residual = std::max(report.max_residual, r);
      if (r > tol) report.violations.push_back({a, b, r});
    }
  return report;
}

}  // namespace sidlab
