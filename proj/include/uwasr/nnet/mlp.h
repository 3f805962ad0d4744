// uwasr/nnet/mlp.h

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

#ifndef UWASR_NNET_MLP_H_
#define UWASR_NNET_MLP_H_

#include <cstdint>
#include <span>
#include <vector>

#include "uwasr/base/matrix.h"

namespace uwasr::nnet {

enum class OutputKind : std::uint8_t { kLinear = 0, kSoftmax = 1 };

/// Dense feedforward topology. Hidden layers use tanh.
struct MlpSpec {
  std::vector<int> layer_sizes;  // input, hidden..., output
  OutputKind output = OutputKind::kLinear;
  std::uint64_t seed = 1;

  int InputDim() const { return layer_sizes.front(); }
  int OutputDim() const { return layer_sizes.back(); }
  int NumLayers() const { return static_cast<int>(layer_sizes.size()) - 1; }
  // Throws kInvalidConfig: needs >= 1 hidden layer and all sizes >= 1.
  void Validate() const;
};

struct DenseLayer {
  Matrix weights;             // out x in
  std::vector<double> bias;  // out
};

// Per-dimension affine map (x - mean) * scale. Empty means identity.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  bool Empty() const { return mean.empty(); }
  void Apply(std::span<double> x) const;
  void Invert(std::span<double> y) const;
  // Fits mean and 1/stddev over the given rows; dimensions with (near) zero
  // spread get scale 1.
  static Standardizer Fit(const Matrix &data, std::span<const std::size_t> rows);
};

struct TrainingInfo {
  int epochs_run = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
  double test_loss = 0.0;
};

struct MlpModel {
  MlpSpec spec;
  std::vector<DenseLayer> layers;
  Standardizer input_norm;
  Standardizer output_norm;  // regressors only
  TrainingInfo info;

  std::size_t NumParameters() const;
};

// Weights and biases uniform in +-1/sqrt(fan_in), drawn from spec.seed.
MlpModel InitializeMlp(const MlpSpec &spec);

// Activations of one batch through the raw network (inputs already
// standardized). activations[0] is the input; activations.back() is the
// network output (after softmax for classifiers).
struct ForwardCache {
  std::vector<Matrix> activations;
};
void ForwardRaw(const MlpModel &model, const Matrix &inputs, ForwardCache *cache);

// Full forward pass including input standardization and, for regressors,
// un-standardization of the output. Throws kDimMismatch.
std::vector<double> Forward(const MlpModel &model, std::span<const double> x);
Matrix ForwardBatch(const MlpModel &model, const Matrix &x);

void SoftmaxInPlace(std::span<double> v);
// Row-wise log-softmax of logits.
void LogSoftmaxInPlace(std::span<double> v);

}  // namespace uwasr::nnet

#endif  // UWASR_NNET_MLP_H_
