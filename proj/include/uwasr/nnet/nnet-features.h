// uwasr/nnet/nnet-features.h

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

#ifndef UWASR_NNET_NNET_FEATURES_H_
#define UWASR_NNET_NNET_FEATURES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uwasr/frontend/frontend.h"
#include "uwasr/nnet/mlp.h"

// Glue between features and the two networks: the uncertainty regressor and
// the acoustic state classifier.
namespace uwasr::nnet {

// Regressor input variants.
//   f1: [log-norm energy, noisy statics]
//   f2: [log-norm energy, mean model variance, enhanced statics]
//   f3: [log-norm energy, enhanced statics]
enum class FeatureVariant { kF1, kF2, kF3 };

FeatureVariant ParseFeatureVariant(const std::string &name);  // "f1".."f3"
std::string FeatureVariantName(FeatureVariant v);
int AssembledDim(FeatureVariant v, int n_mel);

struct FrameInputs {
  std::optional<std::span<const double>> noisy_static;
  std::optional<std::span<const double>> enhanced_static;
  std::optional<double> log_norm_energy;
  std::optional<double> model_uv;
};

// Throws kMissingFeature if a component the variant needs is absent.
std::vector<double> AssembleInput(FeatureVariant v, const FrameInputs &in);

// Five-hidden-layer regressor topologies C1..C4 with a single linear output.
MlpSpec RegressorSpec(const std::string &topology, int input_dim, std::uint64_t seed);
const std::vector<std::string> &RegressorTopologies();

// Forward pass clamped below at zero.
double PredictUncertainty(const MlpModel &model, std::span<const double> input);

// Frames t-L..t+L (edges replicated), each contributing static|delta|delta2.
std::vector<double> ContextWindow(const Features &features, std::size_t t, int half_width);
Matrix ContextWindows(const Features &features, int half_width);

// Softmax state posteriors for one context-window input. Throws kDimMismatch
// or kInvalidConfig for a non-softmax model.
std::vector<double> AcousticPosteriors(const MlpModel &model, std::span<const double> input);
// T x S log posteriors for a whole utterance.
Matrix AcousticLogPosteriors(const MlpModel &model, const Features &features, int half_width);

// Relative state frequencies over all aligned frames. States never seen get
// 1 / (10 * total frames) before renormalization. Throws kEmptyDataset.
std::vector<double> StatePriors(const std::vector<std::vector<int>> &alignments, int num_states);

}  // namespace uwasr::nnet

#endif  // UWASR_NNET_NNET_FEATURES_H_
