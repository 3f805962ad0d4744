// src/uncertainty/uncertainty.cc

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

#include "uwasr/uncertainty/uncertainty.h"

#include <algorithm>
#include <cstdio>

#include "uwasr/base/error.h"

namespace uwasr {

void WeightingParams::Validate() const {
  Require(th > 0.0 && k > 0.0, ErrorCode::kInvalidConfig, "weighting: th and k must be > 0");
}

void ModelUncertaintyConfig::Validate() const {
  Require(c > 0.0, ErrorCode::kInvalidConfig, "model uncertainty: c must be > 0");
  Require(max_var > 0.0, ErrorCode::kInvalidConfig, "model uncertainty: max_var must be > 0");
}

double ModelUncertainty(double noisy_energy, double noise_energy,
                        const ModelUncertaintyConfig &cfg) {
  if (noise_energy <= 0.0) return 0.0;
  const double d = std::max(noisy_energy - noise_energy, 0.0);
  const double ratio = d / (10.0 * cfg.c * noise_energy);
  double var;
  if (ratio >= 1.0)
    var = 2.0 * cfg.c * noise_energy / d;
  else
    var = -d / (50.0 * cfg.c * noise_energy) + 0.4;
  return std::min(var, cfg.max_var);
}

std::vector<double> ModelUncertainty(std::span<const double> noisy,
                                     const NoiseEstimate &noise,
                                     const ModelUncertaintyConfig &cfg) {
  Require(noisy.size() == noise.en2.size(), ErrorCode::kDimMismatch, "ModelUncertainty");
  std::vector<double> out(noisy.size());
  for (std::size_t m = 0; m < noisy.size(); ++m)
    out[m] = ModelUncertainty(noisy[m], noise.en2[m], cfg);
  return out;
}

Matrix ModelUncertainty(const Matrix &noisy_mel, const NoiseEstimate &noise,
                        const ModelUncertaintyConfig &cfg) {
  Matrix out(noisy_mel.Rows(), noisy_mel.Cols());
  for (std::size_t t = 0; t < noisy_mel.Rows(); ++t)
    out.SetRow(t, ModelUncertainty(noisy_mel.Row(t), noise, cfg));
  return out;
}

double ModelUvScalar(std::span<const double> variances) {
  Require(!variances.empty(), ErrorCode::kEmptyInput, "ModelUvScalar");
  double s = 0.0;
  for (double v : variances) s += v;
  return s / static_cast<double>(variances.size());
}

Matrix PropagateDeltaVariance(const Matrix &var, int order) {
  const long num_frames = static_cast<long>(var.Rows());
  Matrix out(var.Rows(), var.Cols());
  if (num_frames == 0) return out;
  double norm = 0.0;
  for (int n = 1; n <= order; ++n) norm += n * n;
  norm = 4.0 * norm * norm;  // (2 sum n^2)^2
  auto clamp = [num_frames](long t) { return std::clamp(t, 0L, num_frames - 1); };
  for (long t = 0; t < num_frames; ++t) {
    auto dst = out.Row(t);
    for (int n = 1; n <= order; ++n) {
      auto plus = var.Row(clamp(t + n));
      auto minus = var.Row(clamp(t - n));
      for (std::size_t m = 0; m < dst.size(); ++m)
        dst[m] += static_cast<double>(n * n) * (plus[m] + minus[m]);
    }
    for (double &v : dst) v /= norm;
  }
  return out;
}

DeltaVariances DeltaUncertainty(const Matrix &static_var, int order) {
  DeltaVariances dv;
  dv.delta = PropagateDeltaVariance(static_var, order);
  dv.delta2 = PropagateDeltaVariance(dv.delta, order);
  return dv;
}

double MseUncertainty(std::span<const double> clean, std::span<const double> enhanced) {
  Require(clean.size() == enhanced.size() && !clean.empty(), ErrorCode::kDimMismatch,
          "MseUncertainty: " + std::to_string(clean.size()) + " vs " +
              std::to_string(enhanced.size()));
  double s = 0.0;
  for (std::size_t n = 0; n < clean.size(); ++n) {
    const double d = clean[n] - enhanced[n];
    s += d * d;
  }
  return s / static_cast<double>(clean.size());
}

std::vector<double> MseUncertainty(const Matrix &clean, const Matrix &enhanced) {
  Require(clean.Rows() == enhanced.Rows(), ErrorCode::kDimMismatch,
          "MseUncertainty: frame counts differ");
  std::vector<double> uv(clean.Rows());
  for (std::size_t t = 0; t < clean.Rows(); ++t) uv[t] = MseUncertainty(clean.Row(t), enhanced.Row(t));
  return uv;
}

std::vector<double> WindowUv(std::span<const double> uv, int half_width) {
  const long n = static_cast<long>(uv.size());
  std::vector<double> out(uv.size());
  for (long t = 0; t < n; ++t) {
    double s = 0.0;
    for (long i = t - half_width; i <= t + half_width; ++i) s += uv[std::clamp(i, 0L, n - 1)];
    out[t] = s / (2.0 * half_width + 1.0);
  }
  return out;
}

double UncertaintyWeight(double uv, const WeightingParams &p) {
  if (uv <= p.th) return 1.0;
  return p.th / (p.k * (uv - p.th) + p.th);
}

std::vector<double> UncertaintyWeights(std::span<const double> uv_window,
                                       const WeightingParams &p) {
  std::vector<double> uw(uv_window.size());
  for (std::size_t t = 0; t < uw.size(); ++t) uw[t] = UncertaintyWeight(uv_window[t], p);
  return uw;
}

UncertaintyTrack MakeTrack(std::vector<double> uv, int half_width, const WeightingParams &p) {
  UncertaintyTrack track;
  track.uv = std::move(uv);
  track.uv_window = WindowUv(track.uv, half_width);
  track.uw = UncertaintyWeights(track.uv_window, p);
  return track;
}

void WriteUncertaintyCsvHeader(std::ostream &os) { os << "utt_id,frame,uv,uv_window,uw\n"; }

void WriteUncertaintyCsvRows(std::ostream &os, const std::string &utt_id,
                             const UncertaintyTrack &track) {
  char buf[96];
  for (std::size_t t = 0; t < track.uv.size(); ++t) {
    const double uw = t < track.uw.size() ? track.uw[t] : 1.0;
    std::snprintf(buf, sizeof(buf), ",%zu,%.9g,%.9g,%.9g\n", t, track.uv[t],
                  track.uv_window[t], uw);
    os << utt_id << buf;
  }
  if (!os) Fail(ErrorCode::kIoError, "uncertainty CSV write failed");
}

}  // namespace uwasr
