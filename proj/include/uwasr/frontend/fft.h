// uwasr/frontend/fft.h

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

#ifndef UWASR_FRONTEND_FFT_H_
#define UWASR_FRONTEND_FFT_H_

#include <complex>
#include <span>

namespace uwasr {

/// Real-input DFT of a fixed size, backed by FFTW. One instance may be used
/// from several threads at once; planning is serialized internally.
class RealFft {
 public:
  explicit RealFft(int size);
  ~RealFft();
  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;

  int Size() const { return size_; }
  int NumBins() const { return size_ / 2 + 1; }

  // out[k] = sum_n in[n] exp(-2 pi i k n / size), k = 0..size/2.
  void Forward(std::span<const double> in, std::span<std::complex<double>> out) const;
  // Unnormalized inverse: out[n] = sum_k X[k] exp(+2 pi i k n / size) over the
  // full Hermitian spectrum. Divide by Size() to invert Forward.
  void Inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

 private:
  int size_;
  void *forward_plan_;
  void *inverse_plan_;
};

}  // namespace uwasr

#endif  // UWASR_FRONTEND_FFT_H_
