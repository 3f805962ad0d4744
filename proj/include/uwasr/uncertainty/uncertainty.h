// uwasr/uncertainty/uncertainty.h

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

#ifndef UWASR_UNCERTAINTY_UNCERTAINTY_H_
#define UWASR_UNCERTAINTY_UNCERTAINTY_H_

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "uwasr/base/matrix.h"
#include "uwasr/frontend/frontend.h"

namespace uwasr {

/// Uncertainty-to-weight mapping:
///   UW = 1                          if UV <= th
///   UW = th / (k (UV - th) + th)    otherwise
struct WeightingParams {
  double th = 1.0;
  double k = 1.0;

  void Validate() const;
};

struct ModelUncertaintyConfig {
  double c = 0.15;       // correlation correction, shared by all filters
  double max_var = 0.4;  // cap, equal to the else-branch maximum

  void Validate() const;
};

// Additive-noise model variance of log(s^2 | y^2) per filter. With
// d = max(y^2 - en2, 0):
//   2 c en2 / d                  if d / (10 c en2) >= 1
//   -d / (50 c en2) + 0.4        otherwise
// en2 == 0 gives 0. Result is in [0, max_var].
double ModelUncertainty(double noisy_energy, double noise_energy,
                        const ModelUncertaintyConfig &cfg);
std::vector<double> ModelUncertainty(std::span<const double> noisy,
                                     const NoiseEstimate &noise,
                                     const ModelUncertaintyConfig &cfg);
// frames x n_mel
Matrix ModelUncertainty(const Matrix &noisy_mel, const NoiseEstimate &noise,
                        const ModelUncertaintyConfig &cfg);

// Mean of the per-filter variances.
double ModelUvScalar(std::span<const double> variances);

// Propagates static variances through the delta regression, assuming
// independent frames:
//   Var(d_t) = sum_n n^2 (V_{t+n} + V_{t-n}) / (2 sum_n n^2)^2
// with replicated edges. The second element applies the operator again.
struct DeltaVariances {
  Matrix delta;
  Matrix delta2;
};
Matrix PropagateDeltaVariance(const Matrix &static_var, int order);
DeltaVariances DeltaUncertainty(const Matrix &static_var, int order);

// Mean squared difference between clean and enhanced static features.
// Throws kDimMismatch.
double MseUncertainty(std::span<const double> clean, std::span<const double> enhanced);
// One value per frame.
std::vector<double> MseUncertainty(const Matrix &clean, const Matrix &enhanced);

// Centered moving average over 2L+1 frames, edges replicated.
std::vector<double> WindowUv(std::span<const double> uv, int half_width);

double UncertaintyWeight(double uv, const WeightingParams &p);
std::vector<double> UncertaintyWeights(std::span<const double> uv_window,
                                       const WeightingParams &p);

struct UncertaintyTrack {
  std::vector<double> uv;         // per-frame UV_t
  std::vector<double> uv_window;  // UV[x_t]
  std::vector<double> uw;         // weight, empty if not computed
};

UncertaintyTrack MakeTrack(std::vector<double> uv, int half_width, const WeightingParams &p);

// utt_id,frame,uv,uv_window,uw
void WriteUncertaintyCsvHeader(std::ostream &os);
void WriteUncertaintyCsvRows(std::ostream &os, const std::string &utt_id,
                             const UncertaintyTrack &track);

}  // namespace uwasr

#endif  // UWASR_UNCERTAINTY_UNCERTAINTY_H_
