// src/kernels/gemm.cc

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

#include "uwasr/kernels/gemm.h"

#include <algorithm>

#include "uwasr/base/error.h"

namespace uwasr::kernels {

namespace {

// Four interleaved partial sums, combined as (s0 + s1) + (s2 + s3) and then
// the tail. Fixed order; the compiler can vectorize the main loop.
inline double Dot(const double *x, const double *y, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  double s = (s0 + s1) + (s2 + s3);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

inline void Axpy(double alpha, const double *x, double *y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void RowNT(const Matrix &a, const Matrix &b, Matrix *c, std::size_t i) {
  const std::size_t k = a.Cols();
  const double *ai = a.Data() + i * k;
  double *ci = c->Data() + i * c->Cols();
  for (std::size_t j = 0; j < b.Rows(); ++j) ci[j] = Dot(ai, b.Data() + j * k, k);
}

void RowNN(const Matrix &a, const Matrix &b, Matrix *c, std::size_t i) {
  const std::size_t k = a.Cols(), n = b.Cols();
  double *ci = c->Data() + i * n;
  std::fill(ci, ci + n, 0.0);
  for (std::size_t p = 0; p < k; ++p) {
    double aip = a(i, p);
    if (aip != 0.0) Axpy(aip, b.Data() + p * n, ci, n);
  }
}

void RowTN(const Matrix &a, const Matrix &b, Matrix *c, std::size_t i) {
  const std::size_t k = a.Rows(), n = b.Cols();
  double *ci = c->Data() + i * n;
  std::fill(ci, ci + n, 0.0);
  for (std::size_t p = 0; p < k; ++p) {
    double api = a(p, i);
    if (api != 0.0) Axpy(api, b.Data() + p * n, ci, n);
  }
}

void PrepareNT(const Matrix &a, const Matrix &b, Matrix *c) {
  Require(a.Cols() == b.Cols(), ErrorCode::kDimMismatch, "GemmNT inner dimension");
  if (c->Rows() != a.Rows() || c->Cols() != b.Rows()) c->Resize(a.Rows(), b.Rows());
}

void PrepareNN(const Matrix &a, const Matrix &b, Matrix *c) {
  Require(a.Cols() == b.Rows(), ErrorCode::kDimMismatch, "GemmNN inner dimension");
  if (c->Rows() != a.Rows() || c->Cols() != b.Cols()) c->Resize(a.Rows(), b.Cols());
}

void PrepareTN(const Matrix &a, const Matrix &b, Matrix *c) {
  Require(a.Rows() == b.Rows(), ErrorCode::kDimMismatch, "GemmTN inner dimension");
  if (c->Rows() != a.Cols() || c->Cols() != b.Cols()) c->Resize(a.Cols(), b.Cols());
}

}  // namespace

void GemmNT(const Matrix &a, const Matrix &b, Matrix *c) {
  PrepareNT(a, b, c);
  const long m = static_cast<long>(a.Rows());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < m; ++i) RowNT(a, b, c, static_cast<std::size_t>(i));
}

void GemmNN(const Matrix &a, const Matrix &b, Matrix *c) {
  PrepareNN(a, b, c);
  const long m = static_cast<long>(a.Rows());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < m; ++i) RowNN(a, b, c, static_cast<std::size_t>(i));
}

void GemmTN(const Matrix &a, const Matrix &b, Matrix *c) {
  PrepareTN(a, b, c);
  const long m = static_cast<long>(a.Cols());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < m; ++i) RowTN(a, b, c, static_cast<std::size_t>(i));
}

namespace reference {

void GemmNT(const Matrix &a, const Matrix &b, Matrix *c) {
  PrepareNT(a, b, c);
  for (std::size_t i = 0; i < a.Rows(); ++i) RowNT(a, b, c, i);
}

void GemmNN(const Matrix &a, const Matrix &b, Matrix *c) {
  PrepareNN(a, b, c);
  for (std::size_t i = 0; i < a.Rows(); ++i) RowNN(a, b, c, i);
}

void GemmTN(const Matrix &a, const Matrix &b, Matrix *c) {
  PrepareTN(a, b, c);
  for (std::size_t i = 0; i < a.Cols(); ++i) RowTN(a, b, c, i);
}

}  // namespace reference

}  // namespace uwasr::kernels
