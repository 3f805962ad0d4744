// uwasr/nnet/mlp-io.h

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

#ifndef UWASR_NNET_MLP_IO_H_
#define UWASR_NNET_MLP_IO_H_

#include <istream>
#include <ostream>
#include <string>

#include "uwasr/nnet/mlp.h"

// Model file, little-endian throughout:
//   magic "UWMLP\0\0\0" (8 bytes), u32 version (1)
//   u32 num sizes, u32 layer sizes..., u8 output kind, u64 seed
//   input standardizer:  u32 dim, f64 mean[dim], f64 scale[dim]
//   output standardizer: u32 dim, f64 mean[dim], f64 scale[dim]
//   per layer: f64 weights[out*in] (row-major, out x in), f64 bias[out]
//   u32 epochs run, f64 train loss, f64 val loss, f64 test loss
namespace uwasr::nnet {

void WriteMlp(std::ostream &os, const MlpModel &model);
MlpModel ReadMlp(std::istream &is);

void WriteMlpFile(const std::string &path, const MlpModel &model);
// Throws kMissingDependency if the file does not exist.
MlpModel ReadMlpFile(const std::string &path);

}  // namespace uwasr::nnet

#endif  // UWASR_NNET_MLP_IO_H_
