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

// Heisenberg-picture evolution of van Hove observables, the commutator
// kernel C(w, w'), the incompatibility observable D = -i C, and the time
// series of <D(t)> whose decay is the weak limit W-lim D(t) = 0.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sidlab/error.hpp"
#include "sidlab/spectral.hpp"

namespace sidlab {

inline constexpr double kIncompatibilityHermitianTol = 1e-10;

/// exp(i m spacing t) for m = -(n-1) .. n-1, stored at index m + n - 1.
/// On the uniform grid w_k - w_l = (k - l) spacing, so one table covers every entry.
inline std::vector<Complex> difference_phases(const FrequencyGrid& grid, double t) {
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  const double step = grid.spacing() * t;
  std::vector<Complex> phases(static_cast<std::size_t>(2 * n - 1));
  for (std::ptrdiff_t m = -(n - 1); m <= n - 1; ++m)
    phases[static_cast<std::size_t>(m + n - 1)] = std::polar(1.0, static_cast<double>(m) * step);
  return phases;
}

/// K(w, w') -> K(w, w') exp(i (w - w') t).
inline RegularKernel evolve(const RegularKernel& kernel, double t) {
  if (!std::isfinite(t)) throw Error(ErrorKind::InvalidParameter, "evolve: t must be finite");
  if (t == 0.0) return kernel;
  const auto n = static_cast<Eigen::Index>(kernel.grid().size());
  const auto phases = difference_phases(kernel.grid(), t);
  KernelMatrix out(n, n);
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index k = 0; k < n; ++k)
      out(k, l) = kernel.values()(k, l) * phases[static_cast<std::size_t>(k - l + n - 1)];
  return RegularKernel(kernel.grid(), std::move(out));
}

/// O(t) = exp(iHt) O exp(-iHt). The diagonal sector carries no phase.
inline VanHoveObservable evolve(const VanHoveObservable& o, double t) {
  return VanHoveObservable(o.diag(), evolve(o.kernel(), t));
}

/// Regular kernel of [O1, O2]:
///   (f1(w) - f1(w')) K2(w, w') - (f2(w) - f2(w')) K1(w, w') + (K1 o K2 - K2 o K1)(w, w').
/// The delta parts of the product cancel, so the commutator has no singular sector.
inline RegularKernel commutator_kernel(const VanHoveObservable& o1, const VanHoveObservable& o2) {
  require_same_grid(o1.grid(), o2.grid(), "commutator_kernel");
  const auto& grid = o1.grid();
  const auto n = static_cast<Eigen::Index>(grid.size());
  const auto& f1 = o1.diag().values();
  const auto& f2 = o2.diag().values();
  const auto& k1 = o1.kernel().values();
  const auto& k2 = o2.kernel().values();

  KernelMatrix c = grid.spacing() * (k1 * k2 - k2 * k1);
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index k = 0; k < n; ++k)
      c(k, l) += (f1(k) - f1(l)) * k2(k, l) - (f2(k) - f2(l)) * k1(k, l);
  return RegularKernel(grid, std::move(c));
}

/// D = i^{-1} C: Hermitian, with an identically zero diagonal sector.
class IncompatibilityObservable {
 public:
  static IncompatibilityObservable from_commutator(const RegularKernel& commutator) {
    KernelMatrix d = Complex(0.0, -1.0) * commutator.values();
    return IncompatibilityObservable(RegularKernel(commutator.grid(), std::move(d)));
  }

  /// Wraps an already Hermitian D kernel (used for prescribed decay profiles).
  static IncompatibilityObservable from_kernel(RegularKernel d) { return IncompatibilityObservable(std::move(d)); }

  const FrequencyGrid& grid() const noexcept { return kernel_.grid(); }
  const RegularKernel& kernel() const noexcept { return kernel_; }
  DiagonalPart diag() const { return DiagonalPart::zero(grid()); }

  /// C = i D.
  RegularKernel commutator() const {
    return RegularKernel(grid(), Complex(0.0, 1.0) * kernel_.values());
  }

  VanHoveObservable as_observable() const { return VanHoveObservable(diag(), kernel_); }

  bool is_zero() const { return kernel_.values().cwiseAbs().maxCoeff() == 0.0; }

 private:
  explicit IncompatibilityObservable(RegularKernel d) : kernel_(std::move(d)) {
    const auto& v = kernel_.values();
    const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
    if (hermitian_defect(v) > kIncompatibilityHermitianTol * scale)
      throw Error(ErrorKind::NotHermitian, "incompatibility observable kernel is not Hermitian");
  }

  RegularKernel kernel_;
};

inline IncompatibilityObservable evolve(const IncompatibilityObservable& d, double t) {
  return IncompatibilityObservable::from_kernel(evolve(d.kernel(), t));
}

inline IncompatibilityObservable incompatibility_observable(const VanHoveObservable& o1, const VanHoveObservable& o2) {
  return IncompatibilityObservable::from_commutator(commutator_kernel(o1, o2));
}

namespace detail {

// spacing^2 sum_{k,l} conj(rho(k,l)) O(k,l) exp(i (k - l) spacing t)
inline Complex regular_pairing(const RegularKernel& rho, const RegularKernel& o, double t) {
  const auto n = static_cast<Eigen::Index>(rho.grid().size());
  const auto phases = difference_phases(rho.grid(), t);
  const auto& r = rho.values();
  const auto& v = o.values();
  Complex total{0.0, 0.0};
  for (Eigen::Index l = 0; l < n; ++l) {
    Complex column{0.0, 0.0};
    for (Eigen::Index k = 0; k < n; ++k)
      column += std::conj(r(k, l)) * v(k, l) * phases[static_cast<std::size_t>(k - l + n - 1)];
    total += column;
  }
  const double h = rho.grid().spacing();
  return h * h * total;
}

}  // namespace detail

/// <O(t)>_rho = int rho(w) O(w) dw + int int conj(rho(w, w')) O(w, w') exp(i (w - w') t) dw dw'.
/// Singular/regular cross pairings vanish. For real symmetric rho(w, w') this is
/// the plain double integral of rho(w, w') O(w, w') exp(i (w - w') t).
inline Complex expectation(const VanHoveState& rho, const VanHoveObservable& o, double t) {
  require_same_grid(rho.grid(), o.grid(), "expectation");
  if (!std::isfinite(t)) throw Error(ErrorKind::InvalidParameter, "expectation: t must be finite");
  const double diag = rho.grid().spacing() * rho.diag().values().dot(o.diag().values());
  return diag + detail::regular_pairing(rho.kernel(), o.kernel(), t);
}

inline Complex expectation(const VanHoveState& rho, const IncompatibilityObservable& d, double t) {
  require_same_grid(rho.grid(), d.grid(), "expectation");
  if (!std::isfinite(t)) throw Error(ErrorKind::InvalidParameter, "expectation: t must be finite");
  return detail::regular_pairing(rho.kernel(), d.kernel(), t);
}

// ---------------------------------------------------------------------------

class ExpectationSeries {
 public:
  ExpectationSeries(std::vector<double> times, std::vector<Complex> values, double recurrence_time)
      : times_(std::move(times)), values_(std::move(values)), recurrence_time_(recurrence_time) {
    if (times_.empty() || times_.size() != values_.size())
      throw Error(ErrorKind::LengthMismatch, "series needs matching, non-empty times and values");
    for (std::size_t j = 1; j < times_.size(); ++j)
      if (!(times_[j] > times_[j - 1])) throw Error(ErrorKind::InvalidParameter, "series times must increase");
    if (times_.back() > 0.5 * recurrence_time_)
      throw Error(ErrorKind::WindowExceeded, "series extends beyond half the recurrence time " +
                                                 std::to_string(recurrence_time_));
    initial_magnitude_ = std::abs(values_.front());
  }

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<Complex>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return times_.size(); }
  double initial_magnitude() const noexcept { return initial_magnitude_; }
  double recurrence_time() const noexcept { return recurrence_time_; }

 private:
  std::vector<double> times_;
  std::vector<Complex> values_;
  double recurrence_time_;
  double initial_magnitude_ = 0.0;
};

/// Anti-diagonal profile p_m = sum_{k - l = m} conj(rho(k,l)) D(k,l); then
/// <D(t)> = spacing^2 sum_m p_m exp(i m spacing t). Each time sample is O(n).
class DecayProfile {
 public:
  DecayProfile(const VanHoveState& rho, const IncompatibilityObservable& d) : grid_(rho.grid()) {
    require_same_grid(rho.grid(), d.grid(), "DecayProfile");
    const auto n = static_cast<Eigen::Index>(grid_.size());
    profile_.assign(static_cast<std::size_t>(2 * n - 1), Complex{0.0, 0.0});
    const auto& r = rho.kernel().values();
    const auto& v = d.kernel().values();
    for (Eigen::Index l = 0; l < n; ++l)
      for (Eigen::Index k = 0; k < n; ++k)
        profile_[static_cast<std::size_t>(k - l + n - 1)] += std::conj(r(k, l)) * v(k, l);
  }

  Complex operator()(double t) const {
    const auto phases = difference_phases(grid_, t);
    Complex total{0.0, 0.0};
    for (std::size_t i = 0; i < profile_.size(); ++i) total += profile_[i] * phases[i];
    const double h = grid_.spacing();
    return h * h * total;
  }

  std::span<const Complex> profile() const noexcept { return profile_; }

 private:
  FrequencyGrid grid_;
  std::vector<Complex> profile_;
};

/// Uniform samples t_j = j t_max / (n_samples - 1) of <D(t)>.
inline ExpectationSeries expectation_series(const VanHoveState& rho, const IncompatibilityObservable& d,
                                            double t_max, std::size_t n_samples) {
  const double recurrence = rho.grid().recurrence_time();
  if (!(t_max > 0.0)) throw Error(ErrorKind::InvalidParameter, "t_max must be positive");
  if (n_samples < 2) throw Error(ErrorKind::InvalidParameter, "n_samples must be at least 2");
  if (t_max > 0.5 * recurrence)
    throw Error(ErrorKind::WindowExceeded, "t_max " + std::to_string(t_max) +
                                               " exceeds half the recurrence time " + std::to_string(recurrence));
  const DecayProfile profile(rho, d);
  std::vector<double> times(n_samples);
  std::vector<Complex> values(n_samples);
  const double dt = t_max / static_cast<double>(n_samples - 1);
  for (std::size_t j = 0; j < n_samples; ++j) {
    times[j] = j + 1 == n_samples ? t_max : static_cast<double>(j) * dt;
    values[j] = profile(times[j]);
  }
  return ExpectationSeries(std::move(times), std::move(values), recurrence);
}

inline const double kDefaultDecoherenceRatio = std::exp(-1.0);
inline constexpr std::size_t kDefaultSustain = 10;

/// First sampled time at which |<D>| <= threshold_ratio * |<D(0)>| holds for
/// `sustain` consecutive samples. A series with zero initial magnitude has
/// decoherence time 0. Returns nullopt when the threshold is not reached.
inline std::optional<double> decoherence_time(const ExpectationSeries& series,
                                              double threshold_ratio = kDefaultDecoherenceRatio,
                                              std::size_t sustain = kDefaultSustain) {
  if (!(threshold_ratio > 0.0 && threshold_ratio < 1.0))
    throw Error(ErrorKind::InvalidParameter, "threshold_ratio must lie in (0, 1)");
  if (sustain < 1) throw Error(ErrorKind::InvalidParameter, "sustain must be at least 1");
  if (series.initial_magnitude() == 0.0) return 0.0;
  const double threshold = threshold_ratio * series.initial_magnitude();
  const auto& v = series.values();
  std::size_t run = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    run = std::abs(v[j]) <= threshold ? run + 1 : 0;
    if (run == sustain) return series.times()[j + 1 - sustain];
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Closed-form decay profiles

/// exp(-sigma_c^2 t^2 / 2): Fourier transform of a Gaussian nu-profile.
inline double gaussian_decay(double sigma_c, double t) { return std::exp(-0.5 * sigma_c * sigma_c * t * t); }

/// exp(-gamma_c |t|): Fourier transform of a single Lorentzian nu-profile.
inline double lorentz_decay(double gamma_c, double t) { return std::exp(-gamma_c * std::abs(t)); }

/// Combined anti-diagonal width of a product of Gaussian bands.
inline double combined_gaussian_width(double sigma_rho, double sigma_d) {
  if (std::isinf(sigma_rho)) return sigma_d;
  if (std::isinf(sigma_d)) return sigma_rho;
  const double a = sigma_rho * sigma_rho, b = sigma_d * sigma_d;
  return std::sqrt(a * b / (a + b));
}

/// Normalized Fourier transform of a product of two Lorentzian bands
/// 1 / ((1 + nu^2/g1^2)(1 + nu^2/g2^2)). Reduces to exp(-g |t|) when the
/// other width is infinite. On a truncated grid the discrete result deviates
/// from this by O(gamma / omega_max).
inline double lorentz_pair_decay(double gamma_rho, double gamma_d, double t) {
  const double u = std::abs(t);
  if (std::isinf(gamma_rho)) return lorentz_decay(gamma_d, u);
  if (std::isinf(gamma_d)) return lorentz_decay(gamma_rho, u);
  const double g1 = gamma_rho, g2 = gamma_d;
  if (std::abs(g2 - g1) <= 1e-9 * std::max(g1, g2)) return (1.0 + g1 * u) * std::exp(-g1 * u);
  return (g2 * std::exp(-g1 * u) - g1 * std::exp(-g2 * u)) / (g2 - g1);
}

/// |<D(t)> / <D(0)>| predicted for band kernels rho(w, w') and D(w, w') of the
/// same family (gaussian_band or lorentz_band), ignoring the slowly varying
/// envelope. Kernel delays shift the time origin by delay_rho - delay_d.
inline std::vector<double> analytic_oracle(const KernelFamilySpec& rho, const KernelFamilySpec& d,
                                           std::span<const double> times) {
  rho.validate();
  d.validate();
  if (rho.family != d.family || (rho.family != KernelFamily::GaussianBand && rho.family != KernelFamily::LorentzBand))
    throw Error(ErrorKind::UnsupportedFamily, "analytic_oracle supports matching gaussian_band or lorentz_band pairs");
  const double shift = rho.delay - d.delay;
  auto profile = [&](double u) {
    if (rho.family == KernelFamily::GaussianBand) return gaussian_decay(combined_gaussian_width(rho.sigma, d.sigma), u);
    return lorentz_pair_decay(rho.sigma, d.sigma, u);
  };
  const double origin = profile(shift);
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(std::abs(profile(t + shift) / origin));
  return out;
}

}  // namespace sidlab
