// tests/kernels-test.cc

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

#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>

#include "test-util.h"
#include "uwasr/base/error.h"
#include "uwasr/kernels/gemm.h"

namespace uwasr {
namespace {

using testing::RandomMatrix;

// Textbook triple loops.
Matrix NaiveNT(const Matrix &a, const Matrix &b) {
  Matrix c(a.Rows(), b.Rows());
  for (std::size_t i = 0; i < a.Rows(); ++i)
    for (std::size_t j = 0; j < b.Rows(); ++j) {
      long double s = 0;
      for (std::size_t k = 0; k < a.Cols(); ++k) s += (long double)a(i, k) * b(j, k);
      c(i, j) = static_cast<double>(s);
    }
  return c;
}

Matrix Transpose(const Matrix &a) {
  Matrix t(a.Cols(), a.Rows());
  for (std::size_t i = 0; i < a.Rows(); ++i)
    for (std::size_t j = 0; j < a.Cols(); ++j) t(j, i) = a(i, j);
  return t;
}

void ExpectNear(const Matrix &x, const Matrix &y, double tol) {
  ASSERT_EQ(x.Rows(), y.Rows());
  ASSERT_EQ(x.Cols(), y.Cols());
  for (std::size_t i = 0; i < x.Rows(); ++i)
    for (std::size_t j = 0; j < x.Cols(); ++j) EXPECT_NEAR(x(i, j), y(i, j), tol);
}

class GemmShapes : public ::testing::TestWithParam<std::tuple<int, int, int>> {};

TEST_P(GemmShapes, MatchNaiveProducts) {
  const auto [m, k, n] = GetParam();
  std::mt19937_64 rng(m * 100 + k * 10 + n);
  const Matrix a = RandomMatrix(rng, m, k), b = RandomMatrix(rng, n, k);
  Matrix c;
  kernels::GemmNT(a, b, &c);
  ExpectNear(c, NaiveNT(a, b), 1e-12);

  const Matrix bt = Transpose(b);
  kernels::GemmNN(a, bt, &c);
  ExpectNear(c, NaiveNT(a, b), 1e-12);

  const Matrix at = Transpose(a);
  kernels::GemmTN(at, bt, &c);
  ExpectNear(c, NaiveNT(a, b), 1e-12);
}

TEST_P(GemmShapes, ParallelIsBitIdenticalToSerialReference) {
  const auto [m, k, n] = GetParam();
  std::mt19937_64 rng(7 + m + k + n);
  const Matrix a = RandomMatrix(rng, m, k), b = RandomMatrix(rng, n, k);
  const Matrix bt = Transpose(b), at = Transpose(a);
  Matrix ref_nt, ref_nn, ref_tn;
  kernels::reference::GemmNT(a, b, &ref_nt);
  kernels::reference::GemmNN(a, bt, &ref_nn);
  kernels::reference::GemmTN(at, bt, &ref_tn);
  for (int threads : {1, 2, 3, 4}) {
    omp_set_num_threads(threads);
    Matrix c;
    kernels::GemmNT(a, b, &c);
    EXPECT_EQ(c, ref_nt) << threads;
    kernels::GemmNN(a, bt, &c);
    EXPECT_EQ(c, ref_nn) << threads;
    kernels::GemmTN(at, bt, &c);
    EXPECT_EQ(c, ref_tn) << threads;
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, GemmShapes,
                         ::testing::Values(std::make_tuple(1, 1, 1), std::make_tuple(3, 5, 2),
                                           std::make_tuple(17, 33, 9),
                                           std::make_tuple(64, 257, 40),
                                           std::make_tuple(5, 1320, 96)));

TEST(Gemm, RejectsMismatchedInnerDimension) {
  Matrix a(2, 3), b(4, 5), c;
  try {
    kernels::GemmNT(a, b, &c);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimMismatch);
  }
  EXPECT_THROW(kernels::GemmNN(a, b, &c), Error);
  EXPECT_THROW(kernels::GemmTN(a, b, &c), Error);
}

}  // namespace
}  // namespace uwasr
