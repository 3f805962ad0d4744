// uwasr/kernels/gemm.h

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

#ifndef UWASR_KERNELS_GEMM_H_
#define UWASR_KERNELS_GEMM_H_

#include "uwasr/base/matrix.h"

// Dense products used by the Mel projection and by MLP training.
//
// Every output element is accumulated in the same fixed order by the OpenMP
// kernels and by the serial reference, so both produce bit-identical results
// for any thread count. Tests in kernels-test.cc hold them to that.
namespace uwasr::kernels {

// c = a * b^T       a: m x k, b: n x k, c: m x n
void GemmNT(const Matrix &a, const Matrix &b, Matrix *c);
// c = a * b         a: m x k, b: k x n, c: m x n
void GemmNN(const Matrix &a, const Matrix &b, Matrix *c);
// c = a^T * b       a: k x m, b: k x n, c: m x n
void GemmTN(const Matrix &a, const Matrix &b, Matrix *c);

namespace reference {
void GemmNT(const Matrix &a, const Matrix &b, Matrix *c);
void GemmNN(const Matrix &a, const Matrix &b, Matrix *c);
void GemmTN(const Matrix &a, const Matrix &b, Matrix *c);
}  // namespace reference

}  // namespace uwasr::kernels

#endif  // UWASR_KERNELS_GEMM_H_
