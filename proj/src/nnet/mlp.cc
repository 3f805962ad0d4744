// src/nnet/mlp.cc

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

#include "uwasr/nnet/mlp.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "uwasr/base/error.h"
#include "uwasr/base/rng.h"
#include "uwasr/kernels/gemm.h"

namespace uwasr::nnet {

void MlpSpec::Validate() const {
  Require(layer_sizes.size() >= 3, ErrorCode::kInvalidConfig,
          "MLP needs an input, at least one hidden layer and an output");
  for (int s : layer_sizes)
    Require(s >= 1, ErrorCode::kInvalidConfig, "MLP layer size " + std::to_string(s));
}

void Standardizer::Apply(std::span<double> x) const {
  if (Empty()) return;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] - mean[i]) * scale[i];
}

void Standardizer::Invert(std::span<double> y) const {
  if (Empty()) return;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = y[i] / scale[i] + mean[i];
}

Standardizer Standardizer::Fit(const Matrix &data, std::span<const std::size_t> rows) {
  Standardizer s;
  const std::size_t dim = data.Cols();
  s.mean.assign(dim, 0.0);
  s.scale.assign(dim, 1.0);
  if (rows.empty()) return s;
  for (std::size_t r : rows)
    for (std::size_t d = 0; d < dim; ++d) s.mean[d] += data(r, d);
  for (double &m : s.mean) m /= static_cast<double>(rows.size());
  std::vector<double> var(dim, 0.0);
  for (std::size_t r : rows)
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = data(r, d) - s.mean[d];
      var[d] += diff * diff;
    }
  for (std::size_t d = 0; d < dim; ++d) {
    const double sd = std::sqrt(var[d] / static_cast<double>(rows.size()));
    s.scale[d] = sd > 1e-12 ? 1.0 / sd : 1.0;
  }
  return s;
}

std::size_t MlpModel::NumParameters() const {
  std::size_t n = 0;
  for (const auto &l : layers) n += l.weights.Rows() * l.weights.Cols() + l.bias.size();
  return n;
}

MlpModel InitializeMlp(const MlpSpec &spec) {
  spec.Validate();
  MlpModel model;
  model.spec = spec;
  Rng rng(spec.seed);
  for (int l = 0; l < spec.NumLayers(); ++l) {
    const int in = spec.layer_sizes[l], out = spec.layer_sizes[l + 1];
    const double r = 1.0 / std::sqrt(static_cast<double>(in));
    std::uniform_real_distribution<double> dist(-r, r);
    DenseLayer layer;
    layer.weights.Resize(out, in);
    layer.bias.resize(out);
    for (int o = 0; o < out; ++o)
      for (int i = 0; i < in; ++i) layer.weights(o, i) = dist(rng);
    for (double &b : layer.bias) b = dist(rng);
    model.layers.push_back(std::move(layer));
  }
  return model;
}

void SoftmaxInPlace(std::span<double> v) {
  const double mx = *std::max_element(v.begin(), v.end());
  double sum = 0.0;
  for (double &x : v) {
    x = std::exp(x - mx);
    sum += x;
  }
  for (double &x : v) x /= sum;
}

void LogSoftmaxInPlace(std::span<double> v) {
  const double mx = *std::max_element(v.begin(), v.end());
  double sum = 0.0;
  for (double x : v) sum += std::exp(x - mx);
  const double lse = mx + std::log(sum);
  for (double &x : v) x -= lse;
}

void ForwardRaw(const MlpModel &model, const Matrix &inputs, ForwardCache *cache) {
  Require(inputs.Cols() == static_cast<std::size_t>(model.spec.InputDim()),
          ErrorCode::kDimMismatch,
          "MLP input has " + std::to_string(inputs.Cols()) + " dims, expected " +
              std::to_string(model.spec.InputDim()));
  const std::size_t num_layers = model.layers.size();
  cache->activations.resize(num_layers + 1);
  cache->activations[0] = inputs;
  for (std::size_t l = 0; l < num_layers; ++l) {
    const DenseLayer &layer = model.layers[l];
    Matrix &out = cache->activations[l + 1];
    kernels::GemmNT(cache->activations[l], layer.weights, &out);
    const bool last = l + 1 == num_layers;
    for (std::size_t r = 0; r < out.Rows(); ++r) {
      auto row = out.Row(r);
      for (std::size_t j = 0; j < row.size(); ++j) row[j] += layer.bias[j];
      if (!last) {
        for (double &x : row) x = std::tanh(x);
      } else if (model.spec.output == OutputKind::kSoftmax) {
        SoftmaxInPlace(row);
      }
    }
  }
}

Matrix ForwardBatch(const MlpModel &model, const Matrix &x) {
  Matrix in = x;
  for (std::size_t r = 0; r < in.Rows(); ++r) model.input_norm.Apply(in.Row(r));
  ForwardCache cache;
  ForwardRaw(model, in, &cache);
  Matrix out = std::move(cache.activations.back());
  for (std::size_t r = 0; r < out.Rows(); ++r) model.output_norm.Invert(out.Row(r));
  return out;
}

std::vector<double> Forward(const MlpModel &model, std::span<const double> x) {
  Matrix in(1, x.size());
  in.SetRow(0, x);
  Matrix out = ForwardBatch(model, in);
  auto row = out.Row(0);
  return {row.begin(), row.end()};
}

}  // namespace uwasr::nnet
