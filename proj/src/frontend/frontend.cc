// src/frontend/frontend.cc

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

#include "uwasr/frontend/frontend.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "uwasr/base/error.h"
#include "uwasr/kernels/gemm.h"

namespace uwasr {

int FrontendConfig::FrameLength(int sample_rate) const {
  return static_cast<int>(std::lround(frame_len_ms * sample_rate / 1000.0));
}

int FrontendConfig::FrameShift(int sample_rate) const {
  return static_cast<int>(std::lround(frame_shift_ms * sample_rate / 1000.0));
}

void FrontendConfig::Validate(int sample_rate) const {
  auto check = [](bool ok, const std::string &what) {
    Require(ok, ErrorCode::kInvalidConfig, "frontend: " + what);
  };
  check(sample_rate > 0, "sample rate must be positive");
  check(FrameLength(sample_rate) >= 2, "frame length too small");
  check(FrameShift(sample_rate) >= 1, "frame shift too small");
  check(fft_size >= FrameLength(sample_rate) && (fft_size & (fft_size - 1)) == 0,
        "fft_size must be a power of two >= frame length");
  check(n_mel >= 1, "n_mel must be >= 1");
  check(mel_fmin >= 0.0 && mel_fmin < mel_fmax && mel_fmax <= sample_rate / 2.0,
        "need 0 <= mel_fmin < mel_fmax <= sample_rate/2");
  check(energy_floor > 0.0, "energy_floor must be positive");
  check(delta_order >= 1, "delta_order must be >= 1");
  check(preemphasis >= 0.0 && preemphasis < 1.0, "preemphasis must be in [0, 1)");
}

int NumFrames(std::size_t num_samples, int frame_len, int frame_shift) {
  if (num_samples < static_cast<std::size_t>(frame_len)) return 0;
  return static_cast<int>((num_samples - frame_len) / frame_shift) + 1;
}

Matrix FrameSignal(const AudioSignal &signal, const FrontendConfig &cfg) {
  cfg.Validate(signal.sample_rate);
  const int len = cfg.FrameLength(signal.sample_rate);
  const int shift = cfg.FrameShift(signal.sample_rate);
  const int num_frames = NumFrames(signal.samples.size(), len, shift);
  if (num_frames == 0)
    Fail(ErrorCode::kSignalTooShort, std::to_string(signal.samples.size()) +
                                         " samples, frame needs " + std::to_string(len));
  std::vector<double> window(len);
  for (int i = 0; i < len; ++i)
    window[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (len - 1));

  Matrix frames(num_frames, len);
  for (int t = 0; t < num_frames; ++t) {
    const double *src = signal.samples.data() + static_cast<std::size_t>(t) * shift;
    auto row = frames.Row(t);
    for (int i = len - 1; i > 0; --i) row[i] = src[i] - cfg.preemphasis * src[i - 1];
    row[0] = src[0] - cfg.preemphasis * src[0];
    for (int i = 0; i < len; ++i) row[i] *= window[i];
  }
  return frames;
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank::MelFilterbank(const FrontendConfig &cfg, int sample_rate)
    : fft_(std::make_shared<RealFft>(cfg.fft_size)), sample_rate_(sample_rate) {
  cfg.Validate(sample_rate);
  const int n = cfg.n_mel;
  const double mel_lo = HzToMel(cfg.mel_fmin), mel_hi = HzToMel(cfg.mel_fmax);
  std::vector<double> edges(n + 2);
  for (int i = 0; i < n + 2; ++i)
    edges[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * i / (n + 1));

  weights_.Resize(n, fft_->NumBins());
  centers_hz_.resize(n);
  for (int m = 0; m < n; ++m) {
    const double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    centers_hz_[m] = center;
    double total = 0.0;
    for (int k = 0; k < fft_->NumBins(); ++k) {
      const double f = BinFrequency(k);
      double w = 0.0;
      if (f > left && f <= center)
        w = (f - left) / (center - left);
      else if (f > center && f < right)
        w = (right - f) / (right - center);
      weights_(m, k) = w;
      total += w;
    }
    Require(total > 0.0, ErrorCode::kInvalidConfig,
            "Mel filter " + std::to_string(m) + " covers no FFT bin; lower n_mel or raise fft_size");
  }
}

double MelFilterbank::BinFrequency(int k) const {
  return static_cast<double>(k) * sample_rate_ / fft_->Size();
}

Matrix MelFilterbank::PowerSpectrum(const Matrix &frames) const {
  const int size = fft_->Size(), bins = fft_->NumBins();
  Require(frames.Cols() <= static_cast<std::size_t>(size), ErrorCode::kDimMismatch,
          "frame longer than FFT size");
  Matrix power(frames.Rows(), bins);
  const long num_frames = static_cast<long>(frames.Rows());
#pragma omp parallel
  {
    std::vector<double> buf(size, 0.0);
    std::vector<std::complex<double>> spec(bins);
#pragma omp for schedule(static)
    for (long t = 0; t < num_frames; ++t) {
      auto row = frames.Row(t);
      std::copy(row.begin(), row.end(), buf.begin());
      std::fill(buf.begin() + row.size(), buf.end(), 0.0);
      fft_->Forward(buf, spec);
      auto out = power.Row(t);
      for (int k = 0; k < bins; ++k) out[k] = std::norm(spec[k]);
    }
  }
  return power;
}

Matrix MelFilterbank::Compute(const Matrix &frames) const {
  Matrix mel;
  kernels::GemmNT(PowerSpectrum(frames), weights_, &mel);
  return mel;
}

std::vector<double> MelFilterbank::ComputeFrame(std::span<const double> frame) const {
  Matrix one(1, frame.size());
  one.SetRow(0, frame);
  Matrix mel = Compute(one);
  auto row = mel.Row(0);
  return {row.begin(), row.end()};
}

Matrix ComputeMelEnergies(const AudioSignal &signal, const FrontendConfig &cfg) {
  MelFilterbank fbank(cfg, signal.sample_rate);
  return fbank.Compute(FrameSignal(signal, cfg));
}

Matrix LogFeatures(const Matrix &mel, double energy_floor) {
  Matrix out(mel.Rows(), mel.Cols());
  for (std::size_t t = 0; t < mel.Rows(); ++t)
    for (std::size_t m = 0; m < mel.Cols(); ++m)
      out(t, m) = std::log(std::max(mel(t, m), energy_floor));
  return out;
}

Matrix ComputeDeltas(const Matrix &seq, int order) {
  const long num_frames = static_cast<long>(seq.Rows());
  Matrix out(seq.Rows(), seq.Cols());
  if (num_frames == 0) return out;
  double denom = 0.0;
  for (int n = 1; n <= order; ++n) denom += n * n;
  denom *= 2.0;
  auto clamp = [num_frames](long t) { return std::clamp(t, 0L, num_frames - 1); };
  for (long t = 0; t < num_frames; ++t) {
    auto dst = out.Row(t);
    for (int n = 1; n <= order; ++n) {
      auto plus = seq.Row(clamp(t + n));
      auto minus = seq.Row(clamp(t - n));
      for (std::size_t m = 0; m < dst.size(); ++m) dst[m] += n * (plus[m] - minus[m]);
    }
    for (double &v : dst) v /= denom;
  }
  return out;
}

std::vector<double> LogNormEnergy(const Matrix &mel) {
  std::vector<double> energy(mel.Rows(), 0.0);
  for (std::size_t t = 0; t < mel.Rows(); ++t)
    for (double v : mel.Row(t)) energy[t] += v;
  const double peak = energy.empty() ? 0.0 : *std::max_element(energy.begin(), energy.end());
  if (!(peak > 0.0)) Fail(ErrorCode::kAllSilent, "no frame has positive energy");
  std::vector<double> out(energy.size());
  for (std::size_t t = 0; t < energy.size(); ++t) {
    // Zero-energy frames get the log of the smallest positive ratio.
    out[t] = energy[t] > 0.0 ? std::log(energy[t] / peak)
                             : std::log(std::numeric_limits<double>::min());
  }
  return out;
}

std::vector<double> Features::Stacked(std::size_t t) const {
  std::vector<double> v;
  v.reserve(3 * NumMel());
  for (const Matrix *m : {&statics, &deltas, &delta2}) {
    auto row = m->Row(t);
    v.insert(v.end(), row.begin(), row.end());
  }
  return v;
}

Features ComputeFeatures(const Matrix &mel, const FrontendConfig &cfg) {
  Features f;
  f.statics = LogFeatures(mel, cfg.energy_floor);
  f.deltas = ComputeDeltas(f.statics, cfg.delta_order);
  f.delta2 = ComputeDeltas(f.deltas, cfg.delta_order);
  f.log_norm_energy = LogNormEnergy(mel);
  return f;
}

NoiseEstimate EstimateNoise(const Matrix &mel, int n_lead) {
  if (n_lead < 1 || static_cast<std::size_t>(n_lead) > mel.Rows())
    Fail(ErrorCode::kInvalidNoiseWindow,
         "n_lead=" + std::to_string(n_lead) + " with " + std::to_string(mel.Rows()) + " frames");
  NoiseEstimate est;
  est.source = NoiseSource::kLeadingFrames;
  est.en2.assign(mel.Cols(), 0.0);
  for (int t = 0; t < n_lead; ++t)
    for (std::size_t m = 0; m < mel.Cols(); ++m) est.en2[m] += mel(t, m);
  for (double &v : est.en2) v /= n_lead;
  return est;
}

NoiseEstimate EstimateNoiseOracle(const Matrix &noise_mel) {
  Require(noise_mel.Rows() > 0, ErrorCode::kInvalidNoiseWindow, "empty noise sequence");
  NoiseEstimate est = EstimateNoise(noise_mel, static_cast<int>(noise_mel.Rows()));
  est.source = NoiseSource::kOracle;
  return est;
}

std::vector<double> SegmentalSnr(std::span<const double> fe, const NoiseEstimate &noise,
                                 double eps) {
  Require(fe.size() == noise.en2.size(), ErrorCode::kDimMismatch, "SegmentalSnr");
  std::vector<double> snr(fe.size());
  for (std::size_t m = 0; m < fe.size(); ++m) {
    const double num = std::max(fe[m] - noise.en2[m], eps);
    const double den = std::max(noise.en2[m], eps);
    snr[m] = std::max(0.0, 10.0 * std::log10(num / den));
  }
  return snr;
}

}  // namespace uwasr
