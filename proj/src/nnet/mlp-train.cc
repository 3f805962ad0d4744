// src/nnet/mlp-train.cc

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

#include "uwasr/nnet/mlp-train.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "uwasr/base/error.h"
#include "uwasr/base/rng.h"
#include "uwasr/kernels/gemm.h"

namespace uwasr::nnet {

void TrainConfig::Validate() const {
  Require(epochs >= 1, ErrorCode::kInvalidConfig, "train: epochs must be >= 1");
  Require(learning_rate > 0.0, ErrorCode::kInvalidConfig, "train: learning_rate must be > 0");
  Require(batch_size >= 1, ErrorCode::kInvalidConfig, "train: batch_size must be >= 1");
  Require(train_frac > 0.0 && val_frac >= 0.0 && test_frac >= 0.0 &&
              std::abs(train_frac + val_frac + test_frac - 1.0) < 1e-9,
          ErrorCode::kInvalidConfig, "train: split fractions must sum to 1");
}

DataSplit SplitDataset(std::size_t n, const TrainConfig &cfg, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(SplitMix64(seed ^ 0x5eedULL));
  std::shuffle(order.begin(), order.end(), rng);
  auto n_val = static_cast<std::size_t>(std::llround(cfg.val_frac * n));
  auto n_test = static_cast<std::size_t>(std::llround(cfg.test_frac * n));
  if (n_val + n_test > n) n_test = n - std::min(n, n_val);
  DataSplit split;
  split.val.assign(order.begin(), order.begin() + n_val);
  split.test.assign(order.begin() + n_val, order.begin() + n_val + n_test);
  split.train.assign(order.begin() + n_val + n_test, order.end());
  return split;
}

namespace {

Matrix GatherRows(const Matrix &m, std::span<const std::size_t> rows) {
  Matrix out(rows.size(), m.Cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.SetRow(i, m.Row(rows[i]));
  return out;
}

double BatchLoss(const Matrix &out, const Matrix &targets, Loss loss) {
  double total = 0.0;
  const std::size_t n = out.Rows(), dim = out.Cols();
  for (std::size_t r = 0; r < n; ++r) {
    if (loss == Loss::kMse) {
      double s = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        const double d = out(r, j) - targets(r, j);
        s += d * d;
      }
      total += s / static_cast<double>(dim);
    } else {
      for (std::size_t j = 0; j < dim; ++j)
        if (targets(r, j) != 0.0)
          total -= targets(r, j) * std::log(std::max(out(r, j), 1e-300));
    }
  }
  return total / static_cast<double>(n);
}

void ApplyUpdate(MlpModel *model, const Gradients &g, double lr) {
  for (std::size_t l = 0; l < model->layers.size(); ++l) {
    DenseLayer &layer = model->layers[l];
    double *w = layer.weights.Data();
    const double *gw = g.weights[l].Data();
    const std::size_t n = layer.weights.Rows() * layer.weights.Cols();
    for (std::size_t i = 0; i < n; ++i) w[i] -= lr * gw[i];
    for (std::size_t i = 0; i < layer.bias.size(); ++i) layer.bias[i] -= lr * g.bias[l][i];
  }
}

// Extended-precision forward pass of one sample, cached per layer so that a
// single-parameter perturbation only recomputes what lies downstream.
class ProbeNet {
 public:
  ProbeNet(const MlpModel &model, std::span<const double> x, std::span<const double> target,
           Loss loss)
      : model_(model), target_(target.begin(), target.end()), loss_(loss) {
    act_.emplace_back(x.begin(), x.end());
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
      const DenseLayer &layer = model.layers[l];
      std::vector<long double> z(layer.weights.Rows());
      for (std::size_t o = 0; o < z.size(); ++o) {
        long double sum = layer.bias[o];
        for (std::size_t i = 0; i < layer.weights.Cols(); ++i)
          sum += static_cast<long double>(layer.weights(o, i)) * act_[l][i];
        z[o] = sum;
      }
      pre_.push_back(z);
      if (l + 1 < model.layers.size())
        for (long double &v : z) v = std::tanh(v);
      act_.push_back(std::move(z));
    }
  }

  // Loss with pre-activation o of layer l shifted by dz.
  long double ShiftedLoss(std::size_t l, std::size_t o, long double dz) const {
    const std::size_t last = model_.layers.size() - 1;
    if (l == last) {
      std::vector<long double> out = act_.back();
      out[o] += dz;
      return Evaluate(out);
    }
    const long double da = std::tanh(pre_[l][o] + dz) - act_[l + 1][o];
    const DenseLayer &next = model_.layers[l + 1];
    std::vector<long double> z = pre_[l + 1];
    for (std::size_t j = 0; j < z.size(); ++j)
      z[j] += static_cast<long double>(next.weights(j, o)) * da;
    for (std::size_t k = l + 1; k < last; ++k) {
      for (long double &v : z) v = std::tanh(v);
      const DenseLayer &layer = model_.layers[k + 1];
      std::vector<long double> nz(layer.weights.Rows());
      for (std::size_t j = 0; j < nz.size(); ++j) {
        long double sum = layer.bias[j];
        for (std::size_t i = 0; i < z.size(); ++i)
          sum += static_cast<long double>(layer.weights(j, i)) * z[i];
        nz[j] = sum;
      }
      z.swap(nz);
    }
    return Evaluate(z);
  }

  long double Input(std::size_t l, std::size_t i) const { return act_[l][i]; }

 private:
  long double Evaluate(const std::vector<long double> &out) const {
    long double total = 0.0L;
    if (loss_ == Loss::kMse) {
      for (std::size_t j = 0; j < out.size(); ++j) {
        const long double d = out[j] - target_[j];
        total += d * d;
      }
      return total / static_cast<long double>(out.size());
    }
    long double mx = out[0], sum = 0.0L;
    for (long double z : out) mx = std::max(mx, z);
    for (long double z : out) sum += std::exp(z - mx);
    const long double lse = mx + std::log(sum);
    for (std::size_t j = 0; j < out.size(); ++j)
      if (target_[j] != 0.0) total -= target_[j] * (out[j] - lse);
    return total;
  }

  const MlpModel &model_;
  std::vector<long double> target_;
  Loss loss_;
  std::vector<std::vector<long double>> act_;  // act_[l] feeds layer l
  std::vector<std::vector<long double>> pre_;
};

}  // namespace

double LossAndGradient(const MlpModel &model, const Matrix &inputs, const Matrix &targets,
                       Loss loss, Gradients *grad) {
  ForwardCache cache;
  ForwardRaw(model, inputs, &cache);
  const Matrix &out = cache.activations.back();
  Require(targets.Rows() == out.Rows() && targets.Cols() == out.Cols(),
          ErrorCode::kDimMismatch, "targets do not match network output");
  const double value = BatchLoss(out, targets, loss);
  if (grad == nullptr) return value;

  const std::size_t batch = out.Rows(), num_layers = model.layers.size();
  grad->weights.resize(num_layers);
  grad->bias.resize(num_layers);

  // dL/dz at the output layer.
  Matrix delta(batch, out.Cols());
  const double scale = loss == Loss::kMse
                           ? 2.0 / (static_cast<double>(out.Cols()) * static_cast<double>(batch))
                           : 1.0 / static_cast<double>(batch);
  const bool linear = model.spec.output == OutputKind::kLinear;
  Require(linear ? loss == Loss::kMse : loss == Loss::kCrossEntropy, ErrorCode::kInvalidConfig,
          "use MSE with a linear output and cross-entropy with softmax");
  for (std::size_t r = 0; r < batch; ++r)
    for (std::size_t j = 0; j < out.Cols(); ++j)
      delta(r, j) = scale * (out(r, j) - targets(r, j));

  for (std::size_t l = num_layers; l-- > 0;) {
    kernels::GemmTN(delta, cache.activations[l], &grad->weights[l]);
    auto &gb = grad->bias[l];
    gb.assign(delta.Cols(), 0.0);
    for (std::size_t r = 0; r < batch; ++r)
      for (std::size_t j = 0; j < delta.Cols(); ++j) gb[j] += delta(r, j);
    if (l == 0) break;
    Matrix prev;
    kernels::GemmNN(delta, model.layers[l].weights, &prev);
    const Matrix &act = cache.activations[l];  // tanh output of layer l-1
    for (std::size_t r = 0; r < prev.Rows(); ++r)
      for (std::size_t j = 0; j < prev.Cols(); ++j) prev(r, j) *= 1.0 - act(r, j) * act(r, j);
    delta = std::move(prev);
  }
  return value;
}

double EvaluateLoss(const MlpModel &model, const Dataset &data,
                    std::span<const std::size_t> rows, Loss loss) {
  if (rows.empty()) return std::numeric_limits<double>::quiet_NaN();
  Matrix out = ForwardBatch(model, GatherRows(data.inputs, rows));
  return BatchLoss(out, GatherRows(data.targets, rows), loss);
}

TrainResult Train(const MlpSpec &spec, const Dataset &data, const TrainConfig &cfg) {
  spec.Validate();
  cfg.Validate();
  if (data.Size() == 0) Fail(ErrorCode::kEmptyDataset, "no training samples");
  Require(data.inputs.Cols() == static_cast<std::size_t>(spec.InputDim()) &&
              data.targets.Cols() == static_cast<std::size_t>(spec.OutputDim()) &&
              data.targets.Rows() == data.Size(),
          ErrorCode::kDimMismatch, "dataset does not match the MLP spec");

  TrainResult result;
  result.split = SplitDataset(data.Size(), cfg, spec.seed);
  const DataSplit &split = result.split;
  if (split.train.empty()) Fail(ErrorCode::kEmptyDataset, "training split is empty");

  MlpModel &model = result.model;
  model = InitializeMlp(spec);
  if (cfg.standardize_inputs) model.input_norm = Standardizer::Fit(data.inputs, split.train);
  const bool regressor = spec.output == OutputKind::kLinear;
  if (regressor && cfg.standardize_targets)
    model.output_norm = Standardizer::Fit(data.targets, split.train);

  // Internal-space copies of inputs and targets.
  Matrix inputs = data.inputs, targets = data.targets;
  for (std::size_t r = 0; r < inputs.Rows(); ++r) {
    model.input_norm.Apply(inputs.Row(r));
    model.output_norm.Apply(targets.Row(r));
  }

  auto record = [&](int epoch) {
    EpochLoss e;
    e.epoch = epoch;
    e.train = EvaluateLoss(model, data, split.train, cfg.loss);
    e.val = EvaluateLoss(model, data, split.val, cfg.loss);
    e.test = EvaluateLoss(model, data, split.test, cfg.loss);
    result.curve.push_back(e);
  };
  record(0);

  std::vector<std::size_t> order = split.train;
  Gradients grad;
  double best_val = std::numeric_limits<double>::infinity();
  int since_best = 0;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    Rng rng(SplitMix64(spec.seed + static_cast<std::uint64_t>(epoch)));
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      std::span<const std::size_t> rows(order.data() + start, end - start);
      LossAndGradient(model, GatherRows(inputs, rows), GatherRows(targets, rows), cfg.loss,
                      &grad);
      ApplyUpdate(&model, grad, cfg.learning_rate);
    }
    record(epoch);
    model.info.epochs_run = epoch;
    if (cfg.early_stop && !split.val.empty()) {
      if (result.curve.back().val < best_val) {
        best_val = result.curve.back().val;
        since_best = 0;
      } else if (++since_best >= cfg.patience) {
        break;
      }
    }
  }
  model.info.train_loss = result.curve.back().train;
  model.info.val_loss = result.curve.back().val;
  model.info.test_loss = result.curve.back().test;
  return result;
}

GradientCheckResult GradientCheck(const MlpModel &model, std::span<const double> x,
                                  std::span<const double> target, Loss loss) {
  Matrix in(1, x.size()), tgt(1, target.size());
  in.SetRow(0, x);
  tgt.SetRow(0, target);
  model.input_norm.Apply(in.Row(0));
  model.output_norm.Apply(tgt.Row(0));

  Gradients grad;
  LossAndGradient(model, in, tgt, loss, &grad);

  // Central differences evaluated in long double so that cancellation does
  // not swamp small gradients.
  constexpr long double kStep = 1e-6L;
  const ProbeNet probe(model, in.Row(0), tgt.Row(0), loss);
  GradientCheckResult res;
  auto compare = [](double bp, long double up, long double down) {
    const double fd = static_cast<double>((up - down) / (2.0L * kStep));
    return std::abs(bp - fd) / std::max(std::abs(bp) + std::abs(fd), 1e-8);
  };
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const DenseLayer &layer = model.layers[l];
    for (std::size_t o = 0; o < layer.weights.Rows(); ++o) {
      for (std::size_t i = 0; i < layer.weights.Cols(); ++i) {
        const long double x = probe.Input(l, i);
        const double err = compare(grad.weights[l](o, i), probe.ShiftedLoss(l, o, kStep * x),
                                   probe.ShiftedLoss(l, o, -kStep * x));
        res.max_rel_error_weights = std::max(res.max_rel_error_weights, err);
      }
      const double err = compare(grad.bias[l][o], probe.ShiftedLoss(l, o, kStep),
                                 probe.ShiftedLoss(l, o, -kStep));
      res.max_rel_error_biases = std::max(res.max_rel_error_biases, err);
    }
  }
  res.max_rel_error = std::max(res.max_rel_error_weights, res.max_rel_error_biases);
  return res;
}

void WriteTrainingCurveCsv(std::ostream &os, const std::vector<EpochLoss> &curve, Loss loss) {
  const char *name = loss == Loss::kMse ? "mse" : "xent";
  os << "epoch,train_" << name << ",val_" << name << ",test_" << name << '\n';
  char buf[128];
  for (const auto &e : curve) {
    std::snprintf(buf, sizeof(buf), "%d,%.9g,%.9g,%.9g\n", e.epoch, e.train, e.val, e.test);
    os << buf;
  }
  if (!os) Fail(ErrorCode::kIoError, "training curve write failed");
}

}  // namespace uwasr::nnet
