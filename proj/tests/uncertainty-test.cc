// tests/uncertainty-test.cc

// Copyright 2026  The uwasr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "test-util.h"
#include "uwasr/base/error.h"
#include "uwasr/uncertainty/uncertainty.h"

namespace uwasr {
namespace {

TEST(ModelUncertainty, HandValues) {
  const ModelUncertaintyConfig cfg;
  EXPECT_NEAR(ModelUncertainty(2.5, 1.0, cfg), 0.2, 1e-12);
  EXPECT_NEAR(ModelUncertainty(1.5, 1.0, cfg), 1.0 / 3.0, 1e-12);
  EXPECT_EQ(ModelUncertainty(5.0, 0.0, cfg), 0.0);
  // Noisy below noise: d clamps to zero.
  EXPECT_EQ(ModelUncertainty(0.5, 1.0, cfg), 0.4);
}

TEST(ModelUncertainty, BranchesMeetAtTheSwitchPoint) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> uc(0.01, 2.0), ue(1e-3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    ModelUncertaintyConfig cfg;
    cfg.c = uc(rng);
    const double en2 = ue(rng);
    const double d = 10.0 * cfg.c * en2;
    const double upper = 2.0 * cfg.c * en2 / d;
    const double lower = -d / (50.0 * cfg.c * en2) + 0.4;
    EXPECT_NEAR(upper, 0.2, 1e-12);
    EXPECT_NEAR(lower, 0.2, 1e-12);
    EXPECT_NEAR(ModelUncertainty(en2 + d, en2, cfg), 0.2, 1e-12);
  }
}

TEST(ModelUncertainty, BoundedAndDecreasingInCleanEnergy) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  const ModelUncertaintyConfig cfg;
  for (int i = 0; i < 10000; ++i) {
    const double v = ModelUncertainty(u(rng), u(rng) * (i % 7 == 0 ? 0.0 : 1.0), cfg);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 0.4);
  }
  double prev = 1.0;
  for (double y = 2.5; y < 100.0; y += 0.5) {
    const double v = ModelUncertainty(y, 1.0, cfg);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(ModelUvScalar, IsTheMean) {
  EXPECT_DOUBLE_EQ(ModelUvScalar(std::vector<double>(40, 0.2)), 0.2);
  EXPECT_DOUBLE_EQ(ModelUvScalar(std::vector<double>{0.2, 0.4}), 0.3);
  EXPECT_EQ(ModelUvScalar(std::vector<double>(3, 0.0)), 0.0);
  EXPECT_THROW(ModelUvScalar(std::vector<double>{}), Error);
}

TEST(DeltaUncertainty, HandValues) {
  const Matrix flat(9, 2, 0.5);
  const Matrix d_flat = PropagateDeltaVariance(flat, 2);
  for (double v : d_flat.Values()) EXPECT_NEAR(v, 0.05, 1e-15);
  const Matrix d_zero = PropagateDeltaVariance(Matrix(5, 3, 0.0), 2);
  for (double v : d_zero.Values()) EXPECT_EQ(v, 0.0);
  Matrix spike(9, 1, 0.0);
  spike(4, 0) = 1.0;
  const Matrix d = PropagateDeltaVariance(spike, 2);
  EXPECT_NEAR(d(3, 0), 1.0 / 100.0, 1e-15);
  EXPECT_NEAR(d(5, 0), 1.0 / 100.0, 1e-15);
  EXPECT_NEAR(d(2, 0), 4.0 / 100.0, 1e-15);
  EXPECT_NEAR(d(6, 0), 4.0 / 100.0, 1e-15);
  EXPECT_EQ(d(4, 0), 0.0);
  const DeltaVariances dv = DeltaUncertainty(flat, 2);
  for (double v : dv.delta2.Values()) EXPECT_NEAR(v, 0.005, 1e-15);
}

TEST(MseUncertainty, HandValuesAndErrors) {
  EXPECT_EQ(MseUncertainty(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}), 0.0);
  EXPECT_DOUBLE_EQ(MseUncertainty(std::vector<double>{1, 3}, std::vector<double>{2, 1}), 2.5);
  EXPECT_THROW(MseUncertainty(std::vector<double>{1}, std::vector<double>{1, 2}), Error);
}

TEST(MseUncertainty, PermutationInvariantAndQuadratic) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = testing::RandomVector(rng, 40), b = testing::RandomVector(rng, 40);
    const double base = MseUncertainty(a, b);
    std::vector<int> perm(40);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> pa(40), pb(40), sb(40);
    for (int i = 0; i < 40; ++i) {
      pa[i] = a[perm[i]];
      pb[i] = b[perm[i]];
      sb[i] = a[i] + 3.0 * (b[i] - a[i]);
    }
    EXPECT_NEAR(MseUncertainty(pa, pb), base, 1e-12);
    EXPECT_NEAR(MseUncertainty(a, sb), 9.0 * base, 1e-12);
  }
}

TEST(WindowUv, HandValuesAndEdges) {
  EXPECT_DOUBLE_EQ(WindowUv(std::vector<double>{1, 2, 3}, 1)[1], 2.0);
  const std::vector<double> x{4, 1, 7, 2};
  EXPECT_EQ(WindowUv(x, 0), x);
  for (double v : WindowUv(std::vector<double>(10, 3.0), 5)) EXPECT_DOUBLE_EQ(v, 3.0);
  // First frame, L = 1: (x0 + x0 + x1) / 3.
  EXPECT_DOUBLE_EQ(WindowUv(x, 1)[0], 3.0);
}

TEST(WindowUv, CommutesWithAddingAConstant) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto uv = testing::RandomVector(rng, 1 + trial % 30, 0.0, 50.0);
    const double c = 0.25 * trial;
    std::vector<double> shifted = uv;
    for (double &v : shifted) v += c;
    const auto a = WindowUv(uv, 5), b = WindowUv(shifted, 5);
    for (std::size_t t = 0; t < uv.size(); ++t) EXPECT_NEAR(b[t], a[t] + c, 1e-12);
  }
}

TEST(UncertaintyWeight, HandValues) {
  EXPECT_NEAR(UncertaintyWeight(2.0, {1.0, 1.0}), 0.5, 1e-12);
  EXPECT_NEAR(UncertaintyWeight(10.0, {8.0, 5.0}), 4.0 / 9.0, 1e-12);
  EXPECT_EQ(UncertaintyWeight(0.0, {8.0, 5.0}), 1.0);
  EXPECT_EQ(UncertaintyWeight(8.0, {8.0, 5.0}), 1.0);
}

TEST(UncertaintyWeight, ShapeProperties) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.01, 20.0);
  for (int i = 0; i < 200; ++i) {
    const WeightingParams p{u(rng), u(rng)};
    EXPECT_NEAR(UncertaintyWeight(p.th * (1 + 1e-13), p), 1.0, 1e-11);
    double prev = 1.0;
    for (double uv = p.th * 1.01; uv <= 100 * p.th; uv += p.th * 0.37) {
      const double w = UncertaintyWeight(uv, p);
      EXPECT_LT(w, prev);
      EXPECT_GT(w, 0.0);
      prev = w;
    }
  }
}

TEST(UncertaintyTrack, CsvRowsPerFrame) {
  const UncertaintyTrack track = MakeTrack({0.0, 4.0, 0.0}, 1, {1.0, 1.0});
  ASSERT_EQ(track.uw.size(), 3u);
  std::ostringstream os;
  WriteUncertaintyCsvHeader(os);
  WriteUncertaintyCsvRows(os, "u", track);
  const std::string s = os.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "utt_id,frame,uv,uv_window,uw");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 4);
}

}  // namespace
}  // namespace uwasr
