// tests/frontend-test.cc

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

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>

#include "test-util.h"
#include "uwasr/base/error.h"
#include "uwasr/frontend/feature-archive.h"
#include "uwasr/frontend/fft.h"
#include "uwasr/frontend/frontend.h"
#include "uwasr/frontend/wave-io.h"

namespace uwasr {
namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode CodeOf(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::kIoError;
}

AudioSignal Tone(double hz, std::size_t n, double amp = 0.5) {
  AudioSignal s;
  s.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.samples[i] = amp * std::sin(2 * kPi * hz * i / 16000.0);
  return s;
}

TEST(RealFft, MatchesDirectDft) {
  std::mt19937_64 rng(3);
  for (int n : {8, 12, 512}) {
    const auto x = testing::RandomVector(rng, n);
    RealFft fft(n);
    std::vector<std::complex<double>> out(fft.NumBins());
    fft.Forward(x, out);
    for (int k = 0; k < fft.NumBins(); ++k) {
      std::complex<double> s = 0;
      for (int i = 0; i < n; ++i) s += x[i] * std::polar(1.0, -2 * kPi * k * i / n);
      EXPECT_NEAR(std::abs(out[k] - s), 0.0, 1e-10) << n << " " << k;
    }
    std::vector<double> back(n);
    fft.Inverse(out, back);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(back[i] / n, x[i], 1e-12);
  }
}

TEST(FrameSignal, FrameCountFormula) {
  const FrontendConfig cfg;
  AudioSignal one_second;
  one_second.samples.assign(16000, 0.1);
  EXPECT_EQ(FrameSignal(one_second, cfg).Rows(), 98u);
  AudioSignal one_frame;
  one_frame.samples.assign(400, 0.1);
  EXPECT_EQ(FrameSignal(one_frame, cfg).Rows(), 1u);
  for (std::size_t len : {400u, 401u, 559u, 560u, 12345u})
    EXPECT_EQ(NumFrames(len, 400, 160), static_cast<int>((len - 400) / 160 + 1));
}

TEST(FrameSignal, ZeroSignalGivesZeroFrames) {
  AudioSignal s;
  s.samples.assign(1000, 0.0);
  const Matrix f = FrameSignal(s, FrontendConfig{});
  for (double v : f.Values()) EXPECT_EQ(v, 0.0);
}

TEST(FrameSignal, TooShortThrows) {
  AudioSignal s;
  s.samples.assign(399, 0.1);
  EXPECT_EQ(CodeOf([&] { FrameSignal(s, FrontendConfig{}); }), ErrorCode::kSignalTooShort);
}

TEST(FrameSignal, PreemphasisThenHamming) {
  std::mt19937_64 rng(5);
  AudioSignal s;
  s.samples = testing::RandomVector(rng, 700);
  const FrontendConfig cfg;
  const Matrix f = FrameSignal(s, cfg);
  for (std::size_t t = 0; t < f.Rows(); ++t)
    for (int i = 0; i < 400; ++i) {
      const double x = s.samples[t * 160 + i];
      const double prev = i == 0 ? x : s.samples[t * 160 + i - 1];
      const double w = 0.54 - 0.46 * std::cos(2 * kPi * i / 399.0);
      EXPECT_NEAR(f(t, i), (x - 0.97 * prev) * w, 1e-15);
    }
}

TEST(MelScale, RoundTripAndReferencePoint) {
  EXPECT_NEAR(HzToMel(1000.0), 1000.0, 0.05);
  for (double hz : {20.0, 440.0, 7999.0}) EXPECT_NEAR(MelToHz(HzToMel(hz)), hz, 1e-9);
}

TEST(MelFilterbank, UnitPeakTrianglesCoverEveryFilter) {
  const MelFilterbank fb(FrontendConfig{}, 16000);
  EXPECT_EQ(fb.NumFilters(), 40);
  EXPECT_EQ(fb.NumBins(), 257);
  for (int m = 0; m < 40; ++m) {
    double peak = 0, sum = 0;
    for (double w : fb.Weights().Row(m)) {
      EXPECT_GE(w, 0.0);
      peak = std::max(peak, w);
      sum += w;
    }
    EXPECT_LE(peak, 1.0);
    EXPECT_GT(sum, 0.0);
    if (m > 0) EXPECT_GT(fb.CenterFrequency(m), fb.CenterFrequency(m - 1));
  }
}

TEST(MelFilterbank, PowerSpectrumMatchesDirectDft) {
  std::mt19937_64 rng(9);
  const FrontendConfig cfg;
  const MelFilterbank fb(cfg, 16000);
  Matrix frames = testing::RandomMatrix(rng, 3, 400);
  const Matrix p = fb.PowerSpectrum(frames);
  for (std::size_t t = 0; t < 3; ++t)
    for (int k = 0; k < 257; k += 16) {
      std::complex<double> s = 0;
      for (int i = 0; i < 400; ++i) s += frames(t, i) * std::polar(1.0, -2 * kPi * k * i / 512);
      EXPECT_NEAR(p(t, k), std::norm(s), 1e-9 * (1 + std::norm(s)));
    }
  // Filter energies are the weighted sums of those bins.
  const Matrix e = fb.Compute(frames);
  for (int m = 0; m < 40; m += 7) {
    double s = 0;
    for (int k = 0; k < 257; ++k) s += fb.Weights()(m, k) * p(0, k);
    EXPECT_NEAR(e(0, m), s, 1e-9 * s);
  }
}

TEST(MelEnergies, ZeroFrameGivesZeroEnergies) {
  const MelFilterbank fb(FrontendConfig{}, 16000);
  const std::vector<double> zero(400, 0.0);
  for (double v : fb.ComputeFrame(zero)) EXPECT_EQ(v, 0.0);
}

TEST(MelEnergies, ToneAtFilterCentreDominatesItsFilter) {
  FrontendConfig cfg;
  cfg.preemphasis = 0.0;
  const MelFilterbank fb(cfg, 16000);
  for (int m : {10, 20, 30}) {
    const Matrix e = ComputeMelEnergies(Tone(fb.CenterFrequency(m), 4000), cfg);
    for (std::size_t t = 0; t < e.Rows(); ++t) {
      const auto row = e.Row(t);
      EXPECT_EQ(std::max_element(row.begin(), row.end()) - row.begin(), m);
      EXPECT_LT(row[m - 1], row[m]);
      EXPECT_LT(row[m + 1], row[m]);
    }
  }
}

TEST(MelEnergies, WhiteNoiseFillsEveryFilter) {
  std::mt19937_64 rng(11);
  AudioSignal s;
  s.samples = testing::RandomVector(rng, 16000, -0.3, 0.3);
  const Matrix e = ComputeMelEnergies(s, FrontendConfig{});
  for (double v : e.Values()) EXPECT_GT(v, 0.0);
}

TEST(MelEnergies, ScaleWithSquaredAmplitude) {
  std::mt19937_64 rng(12);
  AudioSignal s;
  s.samples = testing::RandomVector(rng, 2000, -0.2, 0.2);
  AudioSignal g = s;
  for (double &x : g.samples) x *= 3.0;
  const Matrix a = ComputeMelEnergies(s, FrontendConfig{});
  const Matrix b = ComputeMelEnergies(g, FrontendConfig{});
  for (std::size_t i = 0; i < a.Values().size(); ++i)
    EXPECT_NEAR(b.Values()[i], 9.0 * a.Values()[i], 1e-9 * b.Values()[i]);
}

TEST(LogFeatures, HandValues) {
  Matrix mel(1, 3);
  mel(0, 0) = std::exp(1.0);
  mel(0, 1) = 0.0;
  mel(0, 2) = 1.0;
  const Matrix l = LogFeatures(mel, 1e-10);
  EXPECT_DOUBLE_EQ(l(0, 0), 1.0);
  EXPECT_NEAR(l(0, 1), -23.025850929940457, 1e-12);
  EXPECT_EQ(l(0, 2), 0.0);
}

TEST(Deltas, ConstantRampAndSingleFrame) {
  Matrix c(6, 1, 4.0);
  const Matrix d_const = ComputeDeltas(c, 2);
  for (double v : d_const.Values()) EXPECT_EQ(v, 0.0);
  Matrix ramp(9, 1);
  for (int t = 0; t < 9; ++t) ramp(t, 0) = t;
  const Matrix d = ComputeDeltas(ramp, 2);
  for (int t = 2; t < 7; ++t) EXPECT_DOUBLE_EQ(d(t, 0), 1.0);
  Matrix single(1, 2);
  single(0, 0) = 3.0;
  single(0, 1) = -1.0;
  const Matrix d_single = ComputeDeltas(single, 2);
  for (double v : d_single.Values()) EXPECT_EQ(v, 0.0);
}

TEST(Deltas, AreLinear) {
  std::mt19937_64 rng(13);
  const Matrix x = testing::RandomMatrix(rng, 20, 4), y = testing::RandomMatrix(rng, 20, 4);
  Matrix z(20, 4);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 4; ++j) z(i, j) = 2.5 * x(i, j) - 0.5 * y(i, j);
  const Matrix dx = ComputeDeltas(x, 2), dy = ComputeDeltas(y, 2), dz = ComputeDeltas(z, 2);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(dz(i, j), 2.5 * dx(i, j) - 0.5 * dy(i, j), 1e-12);
}

TEST(LogNormEnergy, PeakHalfAndUniform) {
  Matrix mel(3, 2);
  mel(0, 0) = 1.0, mel(0, 1) = 1.0;
  mel(1, 0) = 0.5, mel(1, 1) = 0.5;
  mel(2, 0) = 2.0, mel(2, 1) = 0.0;
  const auto e = LogNormEnergy(mel);
  EXPECT_EQ(e[0], 0.0);
  EXPECT_NEAR(e[1], std::log(0.5), 1e-15);
  EXPECT_EQ(e[2], 0.0);
  const auto u = LogNormEnergy(Matrix(4, 3, 0.7));
  for (double v : u) EXPECT_EQ(v, 0.0);
}

TEST(LogNormEnergy, AllSilentThrows) {
  EXPECT_EQ(CodeOf([] { LogNormEnergy(Matrix(5, 3, 0.0)); }), ErrorCode::kAllSilent);
}

TEST(NoiseEstimate, LeadingFrameMean) {
  Matrix mel(5, 2, 3.0);
  EXPECT_EQ(EstimateNoise(mel, 5).en2, std::vector<double>({3.0, 3.0}));
  mel(0, 1) = 2.0;
  mel(1, 1) = 4.0;
  EXPECT_DOUBLE_EQ(EstimateNoise(mel, 2).en2[1], 3.0);
  EXPECT_EQ(CodeOf([&] { EstimateNoise(mel, 0); }), ErrorCode::kInvalidNoiseWindow);
  EXPECT_EQ(CodeOf([&] { EstimateNoise(mel, 6); }), ErrorCode::kInvalidNoiseWindow);
}

TEST(NoiseEstimate, OracleOfZeroSignalIsZero) {
  AudioSignal zero;
  zero.samples.assign(2000, 0.0);
  const NoiseEstimate n = EstimateNoiseOracle(ComputeMelEnergies(zero, FrontendConfig{}));
  EXPECT_EQ(n.source, NoiseSource::kOracle);
  for (double v : n.en2) EXPECT_EQ(v, 0.0);
}

TEST(SegmentalSnr, HandValuesAndClamp) {
  NoiseEstimate n{{1.0, 1.0, 1.0}, NoiseSource::kLeadingFrames};
  const std::vector<double> fe{2.0, 101.0, 0.5};
  const auto snr = SegmentalSnr(fe, n, 1e-10);
  EXPECT_NEAR(snr[0], 0.0, 1e-12);
  EXPECT_NEAR(snr[1], 20.0, 1e-12);
  EXPECT_EQ(snr[2], 0.0);
}

TEST(WaveIo, RoundTripIsBitExact) {
  testing::TempDir dir("wav");
  std::mt19937_64 rng(21);
  AudioSignal s;
  s.samples = testing::RandomVector(rng, 3001, -0.9, 0.9);
  QuantizeToPcm16(&s.samples);
  WriteWav(dir.Path("a.wav"), s);
  const AudioSignal r = ReadWav(dir.Path("a.wav"));
  EXPECT_EQ(r.sample_rate, 16000);
  EXPECT_EQ(r.samples, s.samples);
}

TEST(WaveIo, RejectsClippingAndMissingFiles) {
  testing::TempDir dir("wav");
  AudioSignal s;
  s.samples = {0.0, 1.0};
  EXPECT_EQ(CodeOf([&] { WriteWav(dir.Path("b.wav"), s); }), ErrorCode::kFormatError);
  EXPECT_EQ(CodeOf([&] { ReadWav(dir.Path("none.wav")); }), ErrorCode::kIoError);
  std::ofstream(dir.Path("junk.wav")) << "not a wave file at all";
  EXPECT_EQ(CodeOf([&] { ReadWav(dir.Path("junk.wav")); }), ErrorCode::kFormatError);
}

TEST(FeatureArchive, CsvHeaderAndBinaryRoundTrip) {
  std::mt19937_64 rng(31);
  AudioSignal s;
  s.samples = testing::RandomVector(rng, 2000, -0.5, 0.5);
  FrontendConfig cfg;
  cfg.n_mel = 4;
  cfg.mel_fmax = 4000;
  const Features f = ComputeFeatures(ComputeMelEnergies(s, cfg), cfg);

  std::ostringstream csv;
  WriteFeatureCsvHeader(csv, 4);
  WriteFeatureCsvRows(csv, "u1", f, true);
  std::istringstream lines(csv.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_EQ(header,
            "utt_id,frame,enhanced,s0,s1,s2,s3,d0,d1,d2,d3,dd0,dd1,dd2,dd3,log_norm_energy");
  EXPECT_EQ(first.rfind("u1,0,1,", 0), 0u);

  std::stringstream bin;
  WriteFeatureArchive(bin, {{"u1", true, f}});
  const auto back = ReadFeatureArchive(bin);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].utt_id, "u1");
  EXPECT_TRUE(back[0].enhanced);
  ASSERT_EQ(back[0].features.NumFrames(), f.NumFrames());
  for (std::size_t t = 0; t < f.NumFrames(); ++t) {
    for (int m = 0; m < 4; ++m) {
      EXPECT_EQ(back[0].features.statics(t, m), static_cast<float>(f.statics(t, m)));
      EXPECT_EQ(back[0].features.delta2(t, m), static_cast<float>(f.delta2(t, m)));
    }
    EXPECT_EQ(back[0].features.log_norm_energy[t], static_cast<float>(f.log_norm_energy[t]));
  }
}

}  // namespace
}  // namespace uwasr
