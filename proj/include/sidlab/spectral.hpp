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

// Discretized continuous-spectrum objects: the uniform midpoint frequency
// grid on [0, omega_max], regular two-frequency kernels K(w, w'), singular
// diagonal parts f(w) delta(w - w'), and the quadrature and kernel algebra
// that act on them. Energies and times use hbar = 1.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sidlab/error.hpp"

namespace sidlab {

using Complex = std::complex<double>;
using KernelMatrix = Eigen::MatrixXcd;

inline constexpr std::size_t kDefaultMaxGridPoints = 4096;
inline constexpr double kDefaultHermitianTol = 1e-8;

class FrequencyGrid {
 public:
  double omega_max() const noexcept { return omega_max_; }
  std::size_t size() const noexcept { return n_points_; }
  double spacing() const noexcept { return spacing_; }

  /// Midpoint node (k + 1/2) * spacing.
  double node(std::size_t k) const noexcept { return (static_cast<double>(k) + 0.5) * spacing_; }

  std::vector<double> nodes() const {
    std::vector<double> out(n_points_);
    for (std::size_t k = 0; k < n_points_; ++k) out[k] = node(k);
    return out;
  }

  /// Quasi-period 2 pi / spacing imposed by the uniform discretization.
  double recurrence_time() const noexcept { return 2.0 * std::numbers::pi / spacing_; }

  bool operator==(const FrequencyGrid&) const = default;

 private:
  FrequencyGrid(double omega_max, std::size_t n_points)
      : omega_max_(omega_max),
        n_points_(n_points),
        spacing_(omega_max / static_cast<double>(n_points)) {}

  friend FrequencyGrid make_grid(double, std::size_t, std::size_t);

  double omega_max_;
  std::size_t n_points_;
  double spacing_;
};

inline FrequencyGrid make_grid(double omega_max, std::size_t n_points,
                               std::size_t max_points = kDefaultMaxGridPoints) {
  if (!(omega_max > 0.0) || !std::isfinite(omega_max))
    throw Error(ErrorKind::NonPositiveRange, "omega_max must be positive and finite");
  if (n_points < 2) throw Error(ErrorKind::TooFewPoints, "grid needs at least 2 points");
  if (n_points > max_points)
    throw Error(ErrorKind::TooManyPoints,
                "n_points " + std::to_string(n_points) + " exceeds cap " + std::to_string(max_points));
  return FrequencyGrid(omega_max, n_points);
}

inline void require_same_grid(const FrequencyGrid& a, const FrequencyGrid& b, std::string_view what) {
  if (!(a == b)) throw Error(ErrorKind::GridMismatch, std::string(what) + ": operands live on different grids");
}

/// Dense samples K(w_k, w_l) of a regular kernel.
class RegularKernel {
 public:
  RegularKernel(FrequencyGrid grid, KernelMatrix values) : grid_(std::move(grid)), values_(std::move(values)) {
    const auto n = static_cast<Eigen::Index>(grid_.size());
    if (values_.rows() != n || values_.cols() != n)
      throw Error(ErrorKind::LengthMismatch, "kernel samples must be n_points x n_points");
  }

  static RegularKernel zero(const FrequencyGrid& grid) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    return RegularKernel(grid, KernelMatrix::Zero(n, n));
  }

  const FrequencyGrid& grid() const noexcept { return grid_; }
  const KernelMatrix& values() const noexcept { return values_; }
  Complex operator()(std::size_t k, std::size_t l) const {
    return values_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
  }

 private:
  FrequencyGrid grid_;
  KernelMatrix values_;
};

/// Real samples f(w_k) of the singular diagonal part f(w) delta(w - w').
class DiagonalPart {
 public:
  DiagonalPart(FrequencyGrid grid, Eigen::VectorXd values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != static_cast<Eigen::Index>(grid_.size()))
      throw Error(ErrorKind::LengthMismatch, "diagonal samples must have n_points entries");
    if (!values_.allFinite()) throw Error(ErrorKind::InvalidParameter, "diagonal samples must be finite");
  }

  static DiagonalPart zero(const FrequencyGrid& grid) {
    return DiagonalPart(grid, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.size())));
  }

  const FrequencyGrid& grid() const noexcept { return grid_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  double operator[](std::size_t k) const { return values_(static_cast<Eigen::Index>(k)); }

 private:
  FrequencyGrid grid_;
  Eigen::VectorXd values_;
};

/// Midpoint rule: spacing * sum of samples.
inline Complex quad1(const FrequencyGrid& grid, std::span<const Complex> samples) {
  if (samples.size() != grid.size()) throw Error(ErrorKind::LengthMismatch, "quad1: sample count != n_points");
  Complex sum{0.0, 0.0};
  for (const auto& s : samples) sum += s;
  return grid.spacing() * sum;
}

inline double quad1(const FrequencyGrid& grid, std::span<const double> samples) {
  if (samples.size() != grid.size()) throw Error(ErrorKind::LengthMismatch, "quad1: sample count != n_points");
  double sum = 0.0;
  for (double s : samples) sum += s;
  return grid.spacing() * sum;
}

inline double quad1(const DiagonalPart& f) {
  const auto& v = f.values();
  return quad1(f.grid(), std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

/// (K1 o K2)(w_k, w_l) = spacing * sum_m K1(w_k, w_m) K2(w_m, w_l).
inline RegularKernel kernel_compose(const RegularKernel& k1, const RegularKernel& k2) {
  require_same_grid(k1.grid(), k2.grid(), "kernel_compose");
  KernelMatrix product = k1.values() * k2.values();
  product *= k1.grid().spacing();
  return RegularKernel(k1.grid(), std::move(product));
}

/// Hilbert-Schmidt norm sqrt(spacing^2 * sum |K|^2).
inline double hs_norm(const RegularKernel& k) { return k.grid().spacing() * k.values().norm(); }

inline double hermitian_defect(const KernelMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool check_hermitian(const RegularKernel& k, double tol = kDefaultHermitianTol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "check_hermitian: tol must be positive");
  return hermitian_defect(k.values()) <= tol;
}

// ---------------------------------------------------------------------------
// Observables and states

class VanHoveObservable {
 public:
  VanHoveObservable(DiagonalPart diag, RegularKernel kernel, double hermitian_tol = kDefaultHermitianTol)
      : diag_(std::move(diag)), kernel_(std::move(kernel)) {
    require_same_grid(diag_.grid(), kernel_.grid(), "VanHoveObservable");
    if (!check_hermitian(kernel_, hermitian_tol))
      throw Error(ErrorKind::NotHermitian, "observable kernel is not Hermitian");
  }

  static VanHoveObservable diagonal_only(DiagonalPart diag) {
    auto grid = diag.grid();
    return VanHoveObservable(std::move(diag), RegularKernel::zero(grid));
  }
  static VanHoveObservable kernel_only(RegularKernel kernel) {
    auto grid = kernel.grid();
    return VanHoveObservable(DiagonalPart::zero(grid), std::move(kernel));
  }

  const FrequencyGrid& grid() const noexcept { return kernel_.grid(); }
  const DiagonalPart& diag() const noexcept { return diag_; }
  const RegularKernel& kernel() const noexcept { return kernel_; }

 private:
  DiagonalPart diag_;
  RegularKernel kernel_;
};

inline constexpr double kStateNormalizationTol = 1e-10;

/// State functional: rho(w) on the diagonal sector, rho(w, w') on the regular one.
class VanHoveState {
 public:
  VanHoveState(DiagonalPart diag, RegularKernel kernel, double hermitian_tol = kDefaultHermitianTol)
      : diag_(std::move(diag)), kernel_(std::move(kernel)) {
    require_same_grid(diag_.grid(), kernel_.grid(), "VanHoveState");
    if ((diag_.values().array() < 0.0).any())
      throw Error(ErrorKind::InvalidState, "rho(w) must be non-negative");
    const double mass = quad1(diag_);
    if (std::abs(mass - 1.0) > kStateNormalizationTol)
      throw Error(ErrorKind::InvalidState, "rho(w) must integrate to 1, got " + std::to_string(mass));
    if (!check_hermitian(kernel_, hermitian_tol))
      throw Error(ErrorKind::NotHermitian, "state kernel is not Hermitian");
  }

  const FrequencyGrid& grid() const noexcept { return kernel_.grid(); }
  const DiagonalPart& diag() const noexcept { return diag_; }
  const RegularKernel& kernel() const noexcept { return kernel_; }

 private:
  DiagonalPart diag_;
  RegularKernel kernel_;
};

// ---------------------------------------------------------------------------
// Kernel families

enum class KernelFamily { GaussianBand, LorentzBand, RectBand, RandomBandlimited };

inline std::string_view to_string(KernelFamily f) {
  switch (f) {
    case KernelFamily::GaussianBand: return "gaussian_band";
    case KernelFamily::LorentzBand: return "lorentz_band";
    case KernelFamily::RectBand: return "rect_band";
    case KernelFamily::RandomBandlimited: return "random_bandlimited";
  }
  return "unknown";
}

inline KernelFamily kernel_family_from_string(std::string_view tag) {
  for (auto f : {KernelFamily::GaussianBand, KernelFamily::LorentzBand, KernelFamily::RectBand,
                 KernelFamily::RandomBandlimited})
    if (to_string(f) == tag) return f;
  throw Error(ErrorKind::UnsupportedFamily, "unknown kernel family '" + std::string(tag) + "'");
}

/// Closed-form band kernel. With nu = w - w' and W = (w + w') / 2:
///   gaussian_band       A exp(-nu^2 / 2 sigma^2) exp(-(W - mu)^2 / 2 Sigma^2)
///   lorentz_band        A / (1 + nu^2 / sigma^2) exp(-(W - mu)^2 / 2 Sigma^2)   (sigma plays gamma)
///   rect_band           A [|nu| <= sigma] [|W - mu| <= Sigma]
///   random_bandlimited  gaussian_band times a seeded Hermitian mode sum
/// A nonzero `delay` multiplies the kernel by exp(-i nu delay).
struct KernelFamilySpec {
  KernelFamily family = KernelFamily::GaussianBand;
  double amplitude = 1.0;
  double sigma = 1.0;
  double mu = 0.0;
  double envelope_width = 1.0;
  std::uint64_t seed = 0;
  double delay = 0.0;

  void validate() const {
    if (!std::isfinite(amplitude)) throw Error(ErrorKind::InvalidParameter, "amplitude must be finite");
    if (!(sigma > 0.0) || !(envelope_width > 0.0))
      throw Error(ErrorKind::InvalidParameter, "kernel widths must be strictly positive");
    if (!std::isfinite(mu) || !std::isfinite(delay))
      throw Error(ErrorKind::InvalidParameter, "mu and delay must be finite");
  }
};

namespace detail {

inline double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

inline double gaussian_profile(double x, double width) {
  if (std::isinf(width)) return 1.0;
  return std::exp(-x * x / (2.0 * width * width));
}

struct RandomModes {
  static constexpr int kModes = 8;
  double coeff[kModes];
  double wavenumber[kModes];
  double envelope_freq;
  double envelope_phase;

  RandomModes(std::uint64_t seed, double sigma) {
    std::mt19937_64 gen(seed);
    const double kmax = std::isinf(sigma) ? 0.0 : 2.0 / sigma;
    for (int j = 0; j < kModes; ++j) {
      coeff[j] = 2.0 * uniform01(gen) - 1.0;
      wavenumber[j] = kmax * (2.0 * uniform01(gen) - 1.0);
    }
    envelope_freq = uniform01(gen);
    envelope_phase = 2.0 * std::numbers::pi * uniform01(gen);
  }

  Complex operator()(double nu, double center) const {
    Complex s{0.0, 0.0};
    for (int j = 0; j < kModes; ++j) s += coeff[j] * std::polar(1.0, wavenumber[j] * nu);
    return s * (1.0 + 0.5 * std::cos(envelope_freq * center + envelope_phase));
  }
};

}  // namespace detail

/// Fraction of the envelope mass (in W) lying outside [0, omega_max].
inline double envelope_mass_outside(const FrequencyGrid& grid, const KernelFamilySpec& spec) {
  const double lo = 0.0, hi = grid.omega_max();
  if (spec.family == KernelFamily::RectBand) {
    const double a = spec.mu - spec.envelope_width, b = spec.mu + spec.envelope_width;
    if (std::isinf(spec.envelope_width)) return 1.0;
    const double inside = std::max(0.0, std::min(b, hi) - std::max(a, lo));
    return 1.0 - inside / (b - a);
  }
  if (std::isinf(spec.envelope_width)) return 1.0;
  const double s = spec.envelope_width * std::numbers::sqrt2;
  const double below = 0.5 * std::erfc((spec.mu - lo) / s);
  const double above = 0.5 * std::erfc((hi - spec.mu) / s);
  return below + above;
}

inline constexpr double kSupportOverflowThreshold = 1e-6;

/// Samples a kernel family on the grid. Envelope overflow beyond the
/// truncation window is reported through `warnings` and is not fatal.
inline RegularKernel build_kernel(const FrequencyGrid& grid, const KernelFamilySpec& spec,
                                  std::vector<std::string>* warnings = nullptr) {
  spec.validate();
  const double overflow = envelope_mass_outside(grid, spec);
  if (overflow > kSupportOverflowThreshold && warnings != nullptr)
    warnings->push_back("SupportOverflow: " + std::string(to_string(spec.family)) + " envelope has fraction " +
                        std::to_string(overflow) + " outside [0, omega_max]");

  const auto n = static_cast<Eigen::Index>(grid.size());
  KernelMatrix values(n, n);
  std::optional<detail::RandomModes> modes;
  if (spec.family == KernelFamily::RandomBandlimited) modes.emplace(spec.seed, spec.sigma);

  for (Eigen::Index k = 0; k < n; ++k) {
    const double w = grid.node(static_cast<std::size_t>(k));
    for (Eigen::Index l = 0; l < n; ++l) {
      const double wp = grid.node(static_cast<std::size_t>(l));
      const double nu = w - wp;
      const double center = 0.5 * (w + wp);
      const double env = detail::gaussian_profile(center - spec.mu, spec.envelope_width);
      Complex v;
      switch (spec.family) {
        case KernelFamily::GaussianBand:
          v = spec.amplitude * detail::gaussian_profile(nu, spec.sigma) * env;
          break;
        case KernelFamily::LorentzBand: {
          const double r = std::isinf(spec.sigma) ? 0.0 : nu / spec.sigma;
          v = spec.amplitude / (1.0 + r * r) * env;
          break;
        }
        case KernelFamily::RectBand: {
          const bool in = std::abs(nu) <= spec.sigma && std::abs(center - spec.mu) <= spec.envelope_width;
          v = in ? spec.amplitude : 0.0;
          break;
        }
        case KernelFamily::RandomBandlimited:
          v = spec.amplitude * detail::gaussian_profile(nu, spec.sigma) * env * (*modes)(nu, center);
          break;
      }
      if (spec.delay != 0.0) v *= std::polar(1.0, -nu * spec.delay);
      values(k, l) = v;
    }
  }
  return RegularKernel(grid, std::move(values));
}

// ---------------------------------------------------------------------------
// Diagonal families

enum class DiagonalFamily { Zero, Constant, Linear, Gaussian, Samples };

inline std::string_view to_string(DiagonalFamily f) {
  switch (f) {
    case DiagonalFamily::Zero: return "zero";
    case DiagonalFamily::Constant: return "constant";
    case DiagonalFamily::Linear: return "linear";
    case DiagonalFamily::Gaussian: return "gaussian";
    case DiagonalFamily::Samples: return "samples";
  }
  return "unknown";
}

inline DiagonalFamily diagonal_family_from_string(std::string_view tag) {
  for (auto f : {DiagonalFamily::Zero, DiagonalFamily::Constant, DiagonalFamily::Linear, DiagonalFamily::Gaussian,
                 DiagonalFamily::Samples})
    if (to_string(f) == tag) return f;
  throw Error(ErrorKind::UnsupportedFamily, "unknown diagonal family '" + std::string(tag) + "'");
}

/// f(w) for the singular sector:
///   constant  amplitude
///   linear    slope * w + offset
///   gaussian  amplitude * exp(-(w - mu)^2 / 2 width^2)
///   samples   explicit values, one per node
/// `normalize` rescales the result to unit midpoint integral (states).
struct DiagonalFamilySpec {
  DiagonalFamily family = DiagonalFamily::Zero;
  double amplitude = 1.0;
  double slope = 1.0;
  double offset = 0.0;
  double mu = 0.0;
  double width = 1.0;
  std::vector<double> values;
  bool normalize = false;
};

inline DiagonalPart build_diagonal(const FrequencyGrid& grid, const DiagonalFamilySpec& spec) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::VectorXd v(n);
  switch (spec.family) {
    case DiagonalFamily::Zero: v.setZero(); break;
    case DiagonalFamily::Constant: v.setConstant(spec.amplitude); break;
    case DiagonalFamily::Linear:
      for (Eigen::Index k = 0; k < n; ++k) v(k) = spec.slope * grid.node(static_cast<std::size_t>(k)) + spec.offset;
      break;
    case DiagonalFamily::Gaussian:
      if (!(spec.width > 0.0)) throw Error(ErrorKind::InvalidParameter, "gaussian diagonal width must be positive");
      for (Eigen::Index k = 0; k < n; ++k)
        v(k) = spec.amplitude * detail::gaussian_profile(grid.node(static_cast<std::size_t>(k)) - spec.mu, spec.width);
      break;
    case DiagonalFamily::Samples:
      if (spec.values.size() != grid.size())
        throw Error(ErrorKind::LengthMismatch, "explicit diagonal samples must have n_points entries");
      v = Eigen::Map<const Eigen::VectorXd>(spec.values.data(), n);
      break;
  }
  if (spec.normalize) {
    const double mass = grid.spacing() * v.sum();
    if (!(std::abs(mass) > 0.0)) throw Error(ErrorKind::InvalidState, "cannot normalize a diagonal with zero mass");
    v /= mass;
  }
  return DiagonalPart(grid, std::move(v));
}

}  // namespace sidlab
