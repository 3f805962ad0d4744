// uwasr/enhancement/spectral-subtraction.h

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

#ifndef UWASR_ENHANCEMENT_SPECTRAL_SUBTRACTION_H_
#define UWASR_ENHANCEMENT_SPECTRAL_SUBTRACTION_H_

#include <span>
#include <vector>

#include "uwasr/base/matrix.h"
#include "uwasr/frontend/frontend.h"

namespace uwasr {

/// Spectral subtraction on Mel filter energies with an SNR-dependent
/// oversubtraction factor and a spectral floor:
///
///   FE_ss = max(beta * FE, FE - alpha(SNR) * E[n^2])
///
/// alpha falls linearly from alpha0 at 0 dB to 1 at snr_knee dB.
struct SsConfig {
  double alpha0 = 2.0;
  double beta = 0.1;
  double snr_knee = 18.0;

  void Validate() const;
};

// snr_db must already be clamped to >= 0.
double OversubtractionFactor(double snr_db, const SsConfig &cfg);

// One frame. `eps` is the SNR floor (FrontendConfig::energy_floor).
// Throws kDimMismatch.
std::vector<double> SpectralSubtract(std::span<const double> fe, const NoiseEstimate &noise,
                                     const SsConfig &cfg, double eps);

// Whole utterance, frames x n_mel; frames are processed in parallel.
Matrix SpectralSubtract(const Matrix &mel, const NoiseEstimate &noise, const SsConfig &cfg,
                        double eps);

}  // namespace uwasr

#endif  // UWASR_ENHANCEMENT_SPECTRAL_SUBTRACTION_H_
