// src/nnet/nnet-features.cc

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

#include "uwasr/nnet/nnet-features.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "uwasr/base/error.h"

namespace uwasr::nnet {

FeatureVariant ParseFeatureVariant(const std::string &name) {
  if (name == "f1") return FeatureVariant::kF1;
  if (name == "f2") return FeatureVariant::kF2;
  if (name == "f3") return FeatureVariant::kF3;
  Fail(ErrorCode::kInvalidConfig, "unknown feature variant '" + name + "'");
}

std::string FeatureVariantName(FeatureVariant v) {
  switch (v) {
    case FeatureVariant::kF1: return "f1";
    case FeatureVariant::kF2: return "f2";
    case FeatureVariant::kF3: return "f3";
  }
  return "?";
}

int AssembledDim(FeatureVariant v, int n_mel) {
  return v == FeatureVariant::kF2 ? n_mel + 2 : n_mel + 1;
}

std::vector<double> AssembleInput(FeatureVariant v, const FrameInputs &in) {
  auto need = [](bool present, const char *what) {
    if (!present) Fail(ErrorCode::kMissingFeature, what);
  };
  need(in.log_norm_energy.has_value(), "log_norm_energy");
  std::vector<double> out{*in.log_norm_energy};
  std::span<const double> statics;
  if (v == FeatureVariant::kF1) {
    need(in.noisy_static.has_value(), "noisy statics");
    statics = *in.noisy_static;
  } else {
    need(in.enhanced_static.has_value(), "enhanced statics");
    statics = *in.enhanced_static;
    if (v == FeatureVariant::kF2) {
      need(in.model_uv.has_value(), "model uncertainty");
      out.push_back(*in.model_uv);
    }
  }
  out.insert(out.end(), statics.begin(), statics.end());
  return out;
}

const std::vector<std::string> &RegressorTopologies() {
  static const std::vector<std::string> names{"C1", "C2", "C3", "C4"};
  return names;
}

MlpSpec RegressorSpec(const std::string &topology, int input_dim, std::uint64_t seed) {
  static const std::map<std::string, std::vector<int>> hidden{
      {"C1", {40, 40, 20, 40, 40}},
      {"C2", {80, 80, 40, 80, 80}},
      {"C3", {40, 40, 40, 40, 40}},
      {"C4", {80, 80, 80, 80, 80}},
  };
  auto it = hidden.find(topology);
  if (it == hidden.end()) Fail(ErrorCode::kInvalidConfig, "unknown topology '" + topology + "'");
  MlpSpec spec;
  spec.layer_sizes.push_back(input_dim);
  spec.layer_sizes.insert(spec.layer_sizes.end(), it->second.begin(), it->second.end());
  spec.layer_sizes.push_back(1);
  spec.output = OutputKind::kLinear;
  spec.seed = seed;
  return spec;
}

double PredictUncertainty(const MlpModel &model, std::span<const double> input) {
  return std::max(0.0, Forward(model, input).front());
}

std::vector<double> ContextWindow(const Features &features, std::size_t t, int half_width) {
  const long n = static_cast<long>(features.NumFrames());
  std::vector<double> out;
  out.reserve((2 * half_width + 1) * 3 * features.NumMel());
  for (long i = static_cast<long>(t) - half_width; i <= static_cast<long>(t) + half_width; ++i) {
    const auto frame = features.Stacked(static_cast<std::size_t>(std::clamp(i, 0L, n - 1)));
    out.insert(out.end(), frame.begin(), frame.end());
  }
  return out;
}

Matrix ContextWindows(const Features &features, int half_width) {
  const std::size_t dim = (2 * half_width + 1) * 3 * features.NumMel();
  Matrix out(features.NumFrames(), dim);
  for (std::size_t t = 0; t < features.NumFrames(); ++t)
    out.SetRow(t, ContextWindow(features, t, half_width));
  return out;
}

std::vector<double> AcousticPosteriors(const MlpModel &model, std::span<const double> input) {
  Require(model.spec.output == OutputKind::kSoftmax, ErrorCode::kInvalidConfig,
          "acoustic model must have a softmax output");
  return Forward(model, input);
}

Matrix AcousticLogPosteriors(const MlpModel &model, const Features &features, int half_width) {
  Require(model.spec.output == OutputKind::kSoftmax, ErrorCode::kInvalidConfig,
          "acoustic model must have a softmax output");
  // Recompute the last layer as logits so that log-softmax stays finite even
  // where the posterior underflows.
  Matrix in = ContextWindows(features, half_width);
  for (std::size_t r = 0; r < in.Rows(); ++r) model.input_norm.Apply(in.Row(r));
  MlpModel logits_model = model;
  logits_model.spec.output = OutputKind::kLinear;
  ForwardCache cache;
  ForwardRaw(logits_model, in, &cache);
  Matrix out = std::move(cache.activations.back());
  for (std::size_t r = 0; r < out.Rows(); ++r) LogSoftmaxInPlace(out.Row(r));
  return out;
}

std::vector<double> StatePriors(const std::vector<std::vector<int>> &alignments, int num_states) {
  std::vector<double> counts(num_states, 0.0);
  double total = 0.0;
  for (const auto &ali : alignments)
    for (int s : ali) {
      Require(s >= 0 && s < num_states, ErrorCode::kDimMismatch,
              "state id " + std::to_string(s) + " out of range");
      counts[s] += 1.0;
      total += 1.0;
    }
  if (total == 0.0) Fail(ErrorCode::kEmptyDataset, "no aligned frames");
  const double floor = 1.0 / (10.0 * total);
  double sum = 0.0;
  for (double &c : counts) {
    c = c > 0.0 ? c / total : floor;
    sum += c;
  }
  for (double &c : counts) c /= sum;
  return counts;
}

}  // namespace uwasr::nnet
