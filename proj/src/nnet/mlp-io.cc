// src/nnet/mlp-io.cc

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

#include "uwasr/nnet/mlp-io.h"

#include <filesystem>
#include <fstream>

#include "uwasr/base/binary-io.h"
#include "uwasr/base/error.h"

namespace uwasr::nnet {

namespace {
constexpr char kMagic[8] = {'U', 'W', 'M', 'L', 'P', 0, 0, 0};
constexpr std::uint32_t kVersion = 1;

void WriteStandardizer(std::ostream &os, const Standardizer &s) {
  binio::WriteU32(os, static_cast<std::uint32_t>(s.mean.size()));
  for (double v : s.mean) binio::WriteF64(os, v);
  for (double v : s.scale) binio::WriteF64(os, v);
}

Standardizer ReadStandardizer(std::istream &is) {
  Standardizer s;
  const std::uint32_t dim = binio::ReadU32(is);
  s.mean.resize(dim);
  s.scale.resize(dim);
  for (double &v : s.mean) v = binio::ReadF64(is);
  for (double &v : s.scale) v = binio::ReadF64(is);
  return s;
}
}  // namespace

void WriteMlp(std::ostream &os, const MlpModel &model) {
  binio::WriteMagic(os, kMagic, 8);
  binio::WriteU32(os, kVersion);
  binio::WriteU32(os, static_cast<std::uint32_t>(model.spec.layer_sizes.size()));
  for (int s : model.spec.layer_sizes) binio::WriteU32(os, static_cast<std::uint32_t>(s));
  binio::WriteU8(os, static_cast<std::uint8_t>(model.spec.output));
  binio::WriteU64(os, model.spec.seed);
  WriteStandardizer(os, model.input_norm);
  WriteStandardizer(os, model.output_norm);
  for (const auto &layer : model.layers) {
    for (double v : layer.weights.Values()) binio::WriteF64(os, v);
    for (double v : layer.bias) binio::WriteF64(os, v);
  }
  binio::WriteU32(os, static_cast<std::uint32_t>(model.info.epochs_run));
  binio::WriteF64(os, model.info.train_loss);
  binio::WriteF64(os, model.info.val_loss);
  binio::WriteF64(os, model.info.test_loss);
  if (!os) Fail(ErrorCode::kIoError, "model write failed");
}

MlpModel ReadMlp(std::istream &is) {
  binio::ExpectMagic(is, kMagic, 8);
  const std::uint32_t version = binio::ReadU32(is);
  Require(version == kVersion, ErrorCode::kFormatError,
          "unsupported model version " + std::to_string(version));
  MlpModel model;
  const std::uint32_t n = binio::ReadU32(is);
  Require(n >= 3 && n < 1024, ErrorCode::kFormatError, "bad layer count");
  model.spec.layer_sizes.resize(n);
  for (int &s : model.spec.layer_sizes) s = static_cast<int>(binio::ReadU32(is));
  const std::uint8_t kind = binio::ReadU8(is);
  Require(kind <= 1, ErrorCode::kFormatError, "bad output kind");
  model.spec.output = static_cast<OutputKind>(kind);
  model.spec.seed = binio::ReadU64(is);
  model.spec.Validate();
  model.input_norm = ReadStandardizer(is);
  model.output_norm = ReadStandardizer(is);
  for (int l = 0; l < model.spec.NumLayers(); ++l) {
    DenseLayer layer;
    const int in = model.spec.layer_sizes[l], out = model.spec.layer_sizes[l + 1];
    layer.weights.Resize(out, in);
    for (int o = 0; o < out; ++o)
      for (int i = 0; i < in; ++i) layer.weights(o, i) = binio::ReadF64(is);
    layer.bias.resize(out);
    for (double &b : layer.bias) b = binio::ReadF64(is);
    model.layers.push_back(std::move(layer));
  }
  model.info.epochs_run = static_cast<int>(binio::ReadU32(is));
  model.info.train_loss = binio::ReadF64(is);
  model.info.val_loss = binio::ReadF64(is);
  model.info.test_loss = binio::ReadF64(is);
  return model;
}

void WriteMlpFile(const std::string &path, const MlpModel &model) {
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail(ErrorCode::kIoError, "cannot write " + path);
  WriteMlp(os, model);
}

MlpModel ReadMlpFile(const std::string &path) {
  if (!std::filesystem::exists(path)) Fail(ErrorCode::kMissingDependency, "no model at " + path);
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail(ErrorCode::kIoError, "cannot open " + path);
  return ReadMlp(is);
}

}  // namespace uwasr::nnet
