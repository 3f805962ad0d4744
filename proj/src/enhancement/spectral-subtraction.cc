// src/enhancement/spectral-subtraction.cc

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

#include "uwasr/enhancement/spectral-subtraction.h"

#include <algorithm>

#include "uwasr/base/error.h"

namespace uwasr {

void SsConfig::Validate() const {
  Require(alpha0 >= 1.0, ErrorCode::kInvalidConfig, "ss: alpha0 must be >= 1");
  Require(beta > 0.0 && beta < 1.0, ErrorCode::kInvalidConfig, "ss: beta must be in (0, 1)");
  Require(snr_knee > 0.0, ErrorCode::kInvalidConfig, "ss: snr_knee must be positive");
}

double OversubtractionFactor(double snr_db, const SsConfig &cfg) {
  if (snr_db <= 0.0) return cfg.alpha0;
  if (snr_db >= cfg.snr_knee) return 1.0;
  return cfg.alpha0 - (cfg.alpha0 - 1.0) * snr_db / cfg.snr_knee;
}

std::vector<double> SpectralSubtract(std::span<const double> fe, const NoiseEstimate &noise,
                                     const SsConfig &cfg, double eps) {
  Require(fe.size() == noise.en2.size(), ErrorCode::kDimMismatch,
          "SpectralSubtract: frame has " + std::to_string(fe.size()) + " filters, noise has " +
              std::to_string(noise.en2.size()));
  const std::vector<double> snr = SegmentalSnr(fe, noise, eps);
  std::vector<double> out(fe.size());
  for (std::size_t m = 0; m < fe.size(); ++m) {
    const double alpha = OversubtractionFactor(snr[m], cfg);
    out[m] = std::max(cfg.beta * fe[m], fe[m] - alpha * noise.en2[m]);
  }
  return out;
}

Matrix SpectralSubtract(const Matrix &mel, const NoiseEstimate &noise, const SsConfig &cfg,
                        double eps) {
  Require(mel.Cols() == noise.en2.size(), ErrorCode::kDimMismatch, "SpectralSubtract");
  Matrix out(mel.Rows(), mel.Cols());
  const long num_frames = static_cast<long>(mel.Rows());
#pragma omp parallel for schedule(static)
  for (long t = 0; t < num_frames; ++t) out.SetRow(t, SpectralSubtract(mel.Row(t), noise, cfg, eps));
  return out;
}

}  // namespace uwasr
