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
#include <sstream>

#include "sidlab/io.hpp"

namespace sidlab {
namespace {

using io::json;

TEST(KernelSpecJson, RoundTrip) {
  const auto j = json::parse(R"({"family": "gaussian_band", "amplitude": 2, "sigma": 1.5, "mu": 4, "Sigma": 3, "delay": 0.5})");
  const auto s = io::kernel_spec_from_json(j);
  EXPECT_EQ(s.family, KernelFamily::GaussianBand);
  EXPECT_EQ(s.amplitude, 2.0);
  EXPECT_EQ(s.sigma, 1.5);
  EXPECT_EQ(s.mu, 4.0);
  EXPECT_EQ(s.envelope_width, 3.0);
  EXPECT_EQ(s.delay, 0.5);
  const auto back = io::kernel_spec_from_json(io::to_json(s));
  EXPECT_EQ(io::to_json(back), io::to_json(s));
}

TEST(KernelSpecJson, GammaAliasAndSeed) {
  const auto l = io::kernel_spec_from_json(json::parse(R"({"family": "lorentz_band", "gamma": 0.5, "mu": 1, "Sigma": 1})"));
  EXPECT_EQ(l.family, KernelFamily::LorentzBand);
  EXPECT_EQ(l.sigma, 0.5);
  const auto r = io::kernel_spec_from_json(json::parse(R"({"family": "random_bandlimited", "seed": 42, "mu": 1, "Sigma": 1})"));
  EXPECT_EQ(r.seed, 42u);
  EXPECT_EQ(io::to_json(r).at("seed"), 42);
}

TEST(KernelSpecJson, Errors) {
  for (const char* text : {R"([])", R"({})", R"({"family": 3})", R"({"family": "triangle"})",
                           R"({"family": "gaussian_band", "sigma": "wide"})",
                           R"({"family": "gaussian_band", "sigma": -1})",
                           R"({"family": "random_bandlimited", "seed": -4})"})
    EXPECT_THROW(io::kernel_spec_from_json(json::parse(text)), Error) << text;
}

TEST(DiagonalSpecJson, FamiliesAndSamples) {
  const auto lin = io::diagonal_spec_from_json(json::parse(R"({"family": "linear", "slope": 2, "offset": -1})"));
  EXPECT_EQ(lin.family, DiagonalFamily::Linear);
  EXPECT_EQ(lin.slope, 2.0);
  EXPECT_EQ(lin.offset, -1.0);
  const auto g = io::diagonal_spec_from_json(json::parse(R"({"family": "gaussian", "Sigma": 0.7, "normalize": true})"));
  EXPECT_EQ(g.width, 0.7);
  EXPECT_TRUE(g.normalize);
  const auto s = io::diagonal_spec_from_json(json::parse(R"({"values": [1, 2, 3]})"));
  EXPECT_EQ(s.family, DiagonalFamily::Samples);
  EXPECT_EQ(s.values, (std::vector<double>{1, 2, 3}));
  EXPECT_THROW(io::diagonal_spec_from_json(json::parse(R"({"values": [1, "x"]})")), Error);
  EXPECT_THROW(io::diagonal_spec_from_json(json::parse(R"({"family": "linear", "normalize": 1})")), Error);
  EXPECT_THROW(io::diagonal_spec_from_json(json::parse(R"({"slope": 1})")), Error);
}

TEST(SubspaceDocument, ParseAndSerialize) {
  const auto doc = io::subspace_document_from_json(json::parse(R"({"dim": 2, "elements": [[[[1, 0], [0, 0]]], [[1, 1], [2, 2]], []]})"));
  ASSERT_EQ(doc.dim, 2u);
  ASSERT_EQ(doc.elements.size(), 3u);
  EXPECT_EQ(doc.elements[0].rank(), 1u);
  // Real shorthand entries, dependent columns collapse.
  EXPECT_EQ(doc.elements[1].rank(), 1u);
  EXPECT_EQ(doc.elements[2].rank(), 0u);
  const auto again = io::subspace_document_from_json(io::to_json(doc));
  for (std::size_t i = 0; i < doc.elements.size(); ++i) EXPECT_TRUE(equal(again.elements[i], doc.elements[i]));
}

TEST(SubspaceDocument, Errors) {
  for (const char* text : {R"({"dim": 2})", R"({"elements": []})", R"({"dim": 0, "elements": []})",
                           R"({"dim": 2, "elements": {}})", R"({"dim": 2, "elements": [[[1, 0, 0]]]})",
                           R"({"dim": 2, "elements": [[[[1, 0, 0], 0]]]})", R"({"dim": 2, "elements": [3]})"})
    EXPECT_THROW(io::subspace_document_from_json(json::parse(text)), Error) << text;
}

TEST(DensityStateDocument, MatrixAndVector) {
  const auto rho = io::density_state_from_json(json::parse(R"({"dim": 2, "rho": [[0.25, [0, 0.1]], [[0, -0.1], 0.75]]})"));
  EXPECT_NEAR(rho.matrix()(0, 1).imag(), 0.1, 1e-15);
  const auto pure = io::density_state_from_json(json::parse(R"({"dim": 2, "vector": [3, [0, 4]]})"));
  EXPECT_NEAR(pure.matrix()(0, 0).real(), 0.36, 1e-15);
  EXPECT_NEAR(pure.matrix()(1, 1).real(), 0.64, 1e-15);
  EXPECT_THROW(io::density_state_from_json(json::parse(R"({"dim": 2, "vector": [0, 0]})")), Error);
  EXPECT_THROW(io::density_state_from_json(json::parse(R"({"dim": 2, "rho": [[1, 0]]})")), Error);
  EXPECT_THROW(io::density_state_from_json(json::parse(R"({"dim": 2, "rho": [[1, 0], [0, 1]]})")), Error);
}

TEST(FormatNumber, ShortestFaithfulAndLocaleFree) {
  EXPECT_EQ(io::format_number(0.0), "0");
  EXPECT_EQ(io::format_number(1.0), "1");
  EXPECT_EQ(io::format_number(-2.5), "-2.5");
  EXPECT_EQ(io::format_number(0.1), "0.10000000000000001");
  for (double x : {std::exp(-1.0), 1e-300, -123456.789, std::sqrt(2.0)}) EXPECT_EQ(std::stod(io::format_number(x)), x);
}

TEST(SeriesCsv, Layout) {
  const ExpectationSeries s({0.0, 0.5}, {std::complex<double>(1.0, 0.0), std::complex<double>(0.6, -0.8)}, 10.0);
  std::ostringstream os;
  io::write_series_csv(os, s);
  EXPECT_EQ(os.str(), "t,re,im,abs\n0,1,0,1\n0.5,0.59999999999999998,-0.80000000000000004,1\n");
  const auto j = io::to_json(s);
  EXPECT_EQ(j.at("times").size(), 2u);
  EXPECT_EQ(j.at("initial_magnitude"), 1.0);
  EXPECT_EQ(j.at("recurrence_time"), 10.0);
}

}  // namespace
}  // namespace sidlab
