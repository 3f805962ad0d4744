// src/frontend/fft.cc

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

#include "uwasr/frontend/fft.h"

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "uwasr/base/error.h"

namespace uwasr {

namespace {
std::mutex &PlannerMutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(int size) : size_(size) {
  Require(size >= 2, ErrorCode::kInvalidConfig, "FFT size must be >= 2");
  std::vector<double> re(size);
  std::vector<std::complex<double>> cx(size / 2 + 1);
  auto *cxp = reinterpret_cast<fftw_complex *>(cx.data());
  std::lock_guard<std::mutex> lock(PlannerMutex());
  forward_plan_ = fftw_plan_dft_r2c_1d(size, re.data(), cxp,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
  inverse_plan_ = fftw_plan_dft_c2r_1d(size, cxp, re.data(),
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr)
    Fail(ErrorCode::kInvalidConfig, "FFTW planning failed");
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void RealFft::Forward(std::span<const double> in,
                      std::span<std::complex<double>> out) const {
  Require(static_cast<int>(in.size()) == size_ && static_cast<int>(out.size()) == NumBins(),
          ErrorCode::kDimMismatch, "RealFft::Forward buffer sizes");
  // r2c with an out-of-place plan leaves the input untouched.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_),
                       const_cast<double *>(in.data()),
                       reinterpret_cast<fftw_complex *>(out.data()));
}

void RealFft::Inverse(std::span<const std::complex<double>> in,
                      std::span<double> out) const {
  Require(static_cast<int>(in.size()) == NumBins() && static_cast<int>(out.size()) == size_,
          ErrorCode::kDimMismatch, "RealFft::Inverse buffer sizes");
  // c2r destroys its input.
  std::vector<std::complex<double>> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       reinterpret_cast<fftw_complex *>(scratch.data()), out.data());
}

}  // namespace uwasr
