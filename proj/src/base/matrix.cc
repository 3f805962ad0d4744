// src/base/matrix.cc

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

#include "uwasr/base/matrix.h"

#include <algorithm>

#include "uwasr/base/error.h"

namespace uwasr {

void Matrix::Resize(std::size_t rows, std::size_t cols, double value) {
  rows_ = rows;
  cols_ = cols;
  data_.assign(rows * cols, value);
}

void Matrix::SetRow(std::size_t r, std::span<const double> values) {
  Require(values.size() == cols_, ErrorCode::kDimMismatch, "row width");
  std::copy(values.begin(), values.end(), data_.begin() + r * cols_);
}

void Matrix::AppendRow(std::span<const double> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  Require(values.size() == cols_, ErrorCode::kDimMismatch, "row width");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

}  // namespace uwasr
