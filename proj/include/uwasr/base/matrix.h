// uwasr/base/matrix.h

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

#ifndef UWASR_BASE_MATRIX_H_
#define UWASR_BASE_MATRIX_H_

#include <cstddef>
#include <span>
#include <vector>

namespace uwasr {

/// Dense row-major matrix of doubles. Rows are frames (or samples in a
/// mini-batch) throughout the library.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  std::size_t Rows() const { return rows_; }
  std::size_t Cols() const { return cols_; }
  bool Empty() const { return data_.empty(); }

  double &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> Row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> Row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  double *Data() { return data_.data(); }
  const double *Data() const { return data_.data(); }
  const std::vector<double> &Values() const { return data_; }

  void Resize(std::size_t rows, std::size_t cols, double value = 0.0);
  void SetRow(std::size_t r, std::span<const double> values);
  void AppendRow(std::span<const double> values);

  bool operator==(const Matrix &other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace uwasr

#endif  // UWASR_BASE_MATRIX_H_
