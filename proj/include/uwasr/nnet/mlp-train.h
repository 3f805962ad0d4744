// uwasr/nnet/mlp-train.h

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

#ifndef UWASR_NNET_MLP_TRAIN_H_
#define UWASR_NNET_MLP_TRAIN_H_

#include <ostream>
#include <span>
#include <vector>

#include "uwasr/nnet/mlp.h"

namespace uwasr::nnet {

enum class Loss { kMse, kCrossEntropy };

struct TrainConfig {
  int epochs = 20;
  double learning_rate = 0.01;
  int batch_size = 32;
  double train_frac = 0.70;
  double val_frac = 0.15;
  double test_frac = 0.15;
  Loss loss = Loss::kMse;
  bool standardize_inputs = true;
  // Regressors only: train against z-scored targets, report in original units.
  bool standardize_targets = true;
  bool early_stop = false;
  int patience = 3;

  void Validate() const;
};

struct Dataset {
  Matrix inputs;
  Matrix targets;

  std::size_t Size() const { return inputs.Rows(); }
};

/// Disjoint, exhaustive partition of sample indices.
struct DataSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
};

// Deterministic given (n, fractions, seed). Validation and test sizes are
// round(n * frac); the training part takes the remainder.
DataSplit SplitDataset(std::size_t n, const TrainConfig &cfg, std::uint64_t seed);

struct EpochLoss {
  int epoch = 0;  // 0 = before the first update
  double train = 0.0;
  double val = 0.0;
  double test = 0.0;
};

struct TrainResult {
  MlpModel model;
  std::vector<EpochLoss> curve;
  DataSplit split;
};

/// Mini-batch gradient descent for exactly cfg.epochs passes (fewer only with
/// early_stop). Bit-reproducible for a given (spec, dataset, cfg).
/// Throws kEmptyDataset, kDimMismatch.
TrainResult Train(const MlpSpec &spec, const Dataset &data, const TrainConfig &cfg);

// Mean loss over the listed rows, in the units of data.targets. NaN when
// `rows` is empty. MSE is averaged over output dims as well.
double EvaluateLoss(const MlpModel &model, const Dataset &data,
                    std::span<const std::size_t> rows, Loss loss);

struct Gradients {
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> bias;
};

// Batch loss and its gradient w.r.t. every parameter. Inputs and targets are
// in the network's internal (standardized) space.
double LossAndGradient(const MlpModel &model, const Matrix &inputs, const Matrix &targets,
                       Loss loss, Gradients *grad);

struct GradientCheckResult {
  double max_rel_error = 0.0;
  double max_rel_error_weights = 0.0;
  double max_rel_error_biases = 0.0;
};

// Compares backprop against central differences (step 1e-6) for every
// parameter: |g_bp - g_fd| / max(|g_bp| + |g_fd|, 1e-8).
GradientCheckResult GradientCheck(const MlpModel &model, std::span<const double> x,
                                  std::span<const double> target, Loss loss);

// epoch,train_mse,val_mse,test_mse (xent for cross-entropy)
void WriteTrainingCurveCsv(std::ostream &os, const std::vector<EpochLoss> &curve, Loss loss);

}  // namespace uwasr::nnet

#endif  // UWASR_NNET_MLP_TRAIN_H_
