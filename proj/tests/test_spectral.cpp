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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sidlab/spectral.hpp"

namespace sidlab {
namespace {

using testing::adaptive_quad;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected sidlab::Error";
  return ErrorKind::InvalidParameter;
}

TEST(MakeGrid, MidpointNodes) {
  const auto g = make_grid(10.0, 4);
  EXPECT_DOUBLE_EQ(g.spacing(), 2.5);
  const std::vector<double> expected{1.25, 3.75, 6.25, 8.75};
  EXPECT_EQ(g.nodes(), expected);

  const auto g2 = make_grid(1.0, 2);
  EXPECT_EQ(g2.nodes(), (std::vector<double>{0.25, 0.75}));
}

TEST(MakeGrid, NodesStrictlyInsideWindow) {
  const auto g = make_grid(3.0, 1000);
  const auto nodes = g.nodes();
  EXPECT_GT(nodes.front(), 0.0);
  EXPECT_LT(nodes.back(), 3.0);
  for (std::size_t k = 1; k < nodes.size(); ++k) EXPECT_GT(nodes[k], nodes[k - 1]);
}

TEST(MakeGrid, Errors) {
  EXPECT_EQ(kind_of([] { make_grid(-1.0, 4); }), ErrorKind::NonPositiveRange);
  EXPECT_EQ(kind_of([] { make_grid(0.0, 4); }), ErrorKind::NonPositiveRange);
  EXPECT_EQ(kind_of([] { make_grid(1.0, 1); }), ErrorKind::TooFewPoints);
  EXPECT_EQ(kind_of([] { make_grid(1.0, 5000); }), ErrorKind::TooManyPoints);
  EXPECT_NO_THROW(make_grid(1.0, 5000, 8192));
}

TEST(Quad1, ConstantsAreExact) {
  const auto g = make_grid(10.0, 4);
  const std::vector<Complex> ones(4, Complex(1.0, 0.0));
  EXPECT_EQ(quad1(g, ones), Complex(10.0, 0.0));
  for (std::size_t n : {2u, 7u, 33u, 1000u}) {
    const auto h = make_grid(3.7, n);
    const std::vector<double> c(n, -2.5);
    EXPECT_NEAR(quad1(h, c), -2.5 * 3.7, 1e-12);
  }
}

TEST(Quad1, LinearIsExact) {
  for (std::size_t n : {2u, 5u, 64u}) {
    const auto g = make_grid(1.0, n);
    const auto nodes = g.nodes();
    EXPECT_NEAR(quad1(g, nodes), 0.5, 1e-15);
  }
}

TEST(Quad1, GaussianMatchesAdaptiveOracle) {
  const auto g = make_grid(10.0, 2048);
  std::vector<double> f;
  for (double w : g.nodes()) f.push_back(std::exp(-0.5 * (w - 5.0) * (w - 5.0)));
  const double oracle = adaptive_quad([](double w) { return std::exp(-0.5 * (w - 5.0) * (w - 5.0)); }, 0.0, 10.0);
  EXPECT_NEAR(quad1(g, f), oracle, 1e-10);
  // The oracle itself is sqrt(2 pi) times the central mass erf(5 / sqrt 2).
  EXPECT_NEAR(oracle, std::sqrt(2.0 * std::numbers::pi) * std::erf(5.0 / std::sqrt(2.0)), 1e-13);
}

TEST(Quad1, LengthMismatch) {
  const auto g = make_grid(1.0, 4);
  const std::vector<double> f(3, 1.0);
  EXPECT_EQ(kind_of([&] { quad1(g, f); }), ErrorKind::LengthMismatch);
}

KernelFamilySpec gaussian(double sigma, double mu, double envelope, double amplitude = 1.0) {
  KernelFamilySpec s;
  s.family = KernelFamily::GaussianBand;
  s.amplitude = amplitude;
  s.sigma = sigma;
  s.mu = mu;
  s.envelope_width = envelope;
  return s;
}

TEST(BuildKernel, GaussianLimits) {
  const auto g = make_grid(4.0, 16);
  const double inf = std::numeric_limits<double>::infinity();
  const auto ones = build_kernel(g, gaussian(inf, 2.0, inf));
  EXPECT_EQ((ones.values().array() - Complex(1.0, 0.0)).abs().maxCoeff(), 0.0);

  // Node 8 sits at 2.25; centering the envelope there gives K(w, w) = A.
  const auto k = build_kernel(g, gaussian(0.3, g.node(8), 0.7, 2.5));
  EXPECT_DOUBLE_EQ(k(8, 8).real(), 2.5);
  const double nu = g.node(8) - g.node(10), c = 0.5 * (g.node(8) + g.node(10)) - g.node(8);
  EXPECT_NEAR(k(8, 10).real(), 2.5 * std::exp(-nu * nu / (2 * 0.09)) * std::exp(-c * c / (2 * 0.49)), 1e-15);
}

TEST(BuildKernel, FamiliesAreHermitian) {
  const auto g = make_grid(10.0, 96);
  for (auto family : {KernelFamily::GaussianBand, KernelFamily::LorentzBand, KernelFamily::RectBand,
                      KernelFamily::RandomBandlimited}) {
    auto s = gaussian(0.8, 5.0, 1.5);
    s.family = family;
    s.seed = 42;
    EXPECT_TRUE(check_hermitian(build_kernel(g, s), 1e-12)) << to_string(family);
    s.delay = 1.7;
    EXPECT_TRUE(check_hermitian(build_kernel(g, s), 1e-12)) << to_string(family) << " delayed";
  }
}

TEST(BuildKernel, RandomBandlimitedIsReproducible) {
  const auto g = make_grid(10.0, 64);
  auto s = gaussian(1.0, 5.0, 2.0);
  s.family = KernelFamily::RandomBandlimited;
  s.seed = 7;
  const auto a = build_kernel(g, s);
  const auto b = build_kernel(g, s);
  EXPECT_TRUE((a.values().array() == b.values().array()).all());
  s.seed = 8;
  const auto c = build_kernel(g, s);
  EXPECT_GT((a.values() - c.values()).cwiseAbs().maxCoeff(), 1e-3);
  // Genuinely complex, not just real symmetric.
  EXPECT_GT(a.values().imag().cwiseAbs().maxCoeff(), 1e-3);
}

TEST(BuildKernel, SupportOverflowWarnsButBuilds) {
  const auto g = make_grid(10.0, 32);
  std::vector<std::string> warnings;
  build_kernel(g, gaussian(1.0, 5.0, 0.5), &warnings);
  EXPECT_TRUE(warnings.empty());
  build_kernel(g, gaussian(1.0, 0.5, 2.0), &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("SupportOverflow"), std::string::npos);
}

TEST(BuildKernel, InvalidSpecs) {
  const auto g = make_grid(1.0, 4);
  EXPECT_EQ(kind_of([&] { build_kernel(g, gaussian(0.0, 0.5, 1.0)); }), ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of([&] { build_kernel(g, gaussian(1.0, 0.5, -1.0)); }), ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of([] { kernel_family_from_string("sinc_band"); }), ErrorKind::UnsupportedFamily);
}

TEST(KernelCompose, ZeroAndDiscreteDelta) {
  const auto g = make_grid(5.0, 20);
  const auto k = build_kernel(g, gaussian(0.7, 2.5, 1.0));
  const auto z = kernel_compose(k, RegularKernel::zero(g));
  EXPECT_EQ(z.values().cwiseAbs().maxCoeff(), 0.0);

  const RegularKernel delta(g, KernelMatrix::Identity(20, 20) / g.spacing());
  EXPECT_LT((kernel_compose(delta, k).values() - k.values()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(KernelCompose, MatchesNaiveTripleLoop) {
  const auto g = make_grid(8.0, 48);
  const auto k1 = build_kernel(g, gaussian(0.6, 4.0, 1.2));
  const auto k2 = build_kernel(g, gaussian(1.1, 3.5, 2.0, -0.4));
  const auto composed = kernel_compose(k1, k2);
  const auto oracle = testing::naive_compose(k1.values(), k2.values(), g.spacing());
  EXPECT_LT((composed.values() - oracle).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(KernelCompose, GridMismatch) {
  const auto a = RegularKernel::zero(make_grid(1.0, 4));
  const auto b = RegularKernel::zero(make_grid(2.0, 4));
  EXPECT_EQ(kind_of([&] { kernel_compose(a, b); }), ErrorKind::GridMismatch);
}

TEST(KernelCompose, AssociativeOnRandomBandlimited) {
  for (std::size_t n : {16u, 128u, 256u}) {
    const auto g = make_grid(10.0, n);
    KernelFamilySpec s = gaussian(1.0, 5.0, 2.0);
    s.family = KernelFamily::RandomBandlimited;
    s.seed = 1;
    const auto a = build_kernel(g, s);
    s.seed = 2;
    const auto b = build_kernel(g, s);
    s.seed = 3;
    const auto c = build_kernel(g, s);
    const auto left = kernel_compose(kernel_compose(a, b), c);
    const auto right = kernel_compose(a, kernel_compose(b, c));
    EXPECT_LT((left.values() - right.values()).cwiseAbs().maxCoeff(), 1e-10) << n;
  }
}

TEST(HsNorm, Basics) {
  const auto g = make_grid(1.0, 2);
  EXPECT_EQ(hs_norm(RegularKernel::zero(g)), 0.0);
  KernelMatrix m = KernelMatrix::Zero(2, 2);
  m(0, 1) = 2.0;
  EXPECT_DOUBLE_EQ(hs_norm(RegularKernel(g, m)), 1.0);
}

TEST(HsNorm, GaussianMatchesQuadratureOracle) {
  const auto g = make_grid(10.0, 512);
  const auto k = build_kernel(g, gaussian(0.8, 5.0, 1.0));
  // |K|^2 = exp(-nu^2 / sigma^2) exp(-(c - mu)^2 / Sigma^2) integrated over the square.
  const auto sq = testing::rotated_double_integral(
      [](double w, double wp) {
        const double nu = w - wp, c = 0.5 * (w + wp) - 5.0;
        return testing::cd(std::exp(-nu * nu / 0.64) * std::exp(-c * c), 0.0);
      },
      10.0, 8.0, 8000, 0.0);
  EXPECT_NEAR(hs_norm(k), std::sqrt(sq.real()), 1e-10);
}

TEST(CheckHermitian, Cases) {
  const auto g = make_grid(1.0, 3);
  KernelMatrix sym(3, 3);
  sym << 1, 2, 3, 2, 4, 5, 3, 5, 6;
  EXPECT_TRUE(check_hermitian(RegularKernel(g, sym), 1e-14));
  const RegularKernel imag(g, KernelMatrix::Constant(3, 3, Complex(0.0, 1.0)));
  EXPECT_FALSE(check_hermitian(imag, 1.999));
  EXPECT_TRUE(check_hermitian(imag, 2.0));
  EXPECT_EQ(kind_of([&] { check_hermitian(imag, 0.0); }), ErrorKind::InvalidParameter);
}

TEST(VanHoveState, Invariants) {
  const auto g = make_grid(10.0, 200);
  DiagonalFamilySpec d;
  d.family = DiagonalFamily::Gaussian;
  d.mu = 5.0;
  d.width = 1.0;
  d.normalize = true;
  const auto diag = build_diagonal(g, d);
  EXPECT_NEAR(quad1(diag), 1.0, 1e-14);
  EXPECT_NO_THROW(VanHoveState(diag, RegularKernel::zero(g)));

  d.normalize = false;
  EXPECT_EQ(kind_of([&] { VanHoveState(build_diagonal(g, d), RegularKernel::zero(g)); }), ErrorKind::InvalidState);
  Eigen::VectorXd neg = diag.values();
  neg(3) = -1e-3;
  EXPECT_EQ(kind_of([&] { VanHoveState(DiagonalPart(g, neg), RegularKernel::zero(g)); }), ErrorKind::InvalidState);
  const RegularKernel skew(g, KernelMatrix::Constant(200, 200, Complex(0.0, 1.0)));
  EXPECT_EQ(kind_of([&] { VanHoveState(diag, skew); }), ErrorKind::NotHermitian);
}

TEST(DiagonalPart, RejectsNonFinite) {
  const auto g = make_grid(1.0, 2);
  Eigen::VectorXd v(2);
  v << 1.0, std::nan("");
  EXPECT_EQ(kind_of([&] { DiagonalPart(g, v); }), ErrorKind::InvalidParameter);
}

}  // namespace
}  // namespace sidlab
