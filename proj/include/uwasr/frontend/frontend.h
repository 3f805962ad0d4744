// uwasr/frontend/frontend.h

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

#ifndef UWASR_FRONTEND_FRONTEND_H_
#define UWASR_FRONTEND_FRONTEND_H_

#include <memory>
#include <span>
#include <vector>

#include "uwasr/base/matrix.h"
#include "uwasr/frontend/fft.h"
#include "uwasr/frontend/wave-io.h"

namespace uwasr {

struct FrontendConfig {
  double frame_len_ms = 25.0;
  double frame_shift_ms = 10.0;
  int fft_size = 512;
  int n_mel = 40;
  double mel_fmin = 20.0;
  double mel_fmax = 8000.0;
  double energy_floor = 1e-10;
  int delta_order = 2;
  double preemphasis = 0.97;

  int FrameLength(int sample_rate) const;
  int FrameShift(int sample_rate) const;
  // Throws kInvalidConfig.
  void Validate(int sample_rate) const;
};

// floor((num_samples - frame_len) / shift) + 1, or 0 when shorter than a frame.
int NumFrames(std::size_t num_samples, int frame_len, int frame_shift);

/// Splits the signal into overlapping frames (one per row). Each frame is
/// pre-emphasized (x[i] -= p * x[i-1], first sample against itself) and then
/// Hamming-windowed. Throws kSignalTooShort.
Matrix FrameSignal(const AudioSignal &signal, const FrontendConfig &cfg);

double HzToMel(double hz);
double MelToHz(double mel);

/// Triangular, unit-peak filters with centers equally spaced on the Mel
/// scale between mel_fmin and mel_fmax, applied to |DFT|^2.
class MelFilterbank {
 public:
  MelFilterbank(const FrontendConfig &cfg, int sample_rate);

  int NumFilters() const { return static_cast<int>(weights_.Rows()); }
  int NumBins() const { return fft_->NumBins(); }
  int FftSize() const { return fft_->Size(); }
  double BinFrequency(int k) const;
  double CenterFrequency(int m) const { return centers_hz_[m]; }
  // n_mel x (fft_size/2 + 1)
  const Matrix &Weights() const { return weights_; }

  // |DFT|^2 of each zero-padded frame; frames x bins.
  Matrix PowerSpectrum(const Matrix &frames) const;
  // Filter energies, frames x n_mel; every entry >= 0.
  Matrix Compute(const Matrix &frames) const;
  std::vector<double> ComputeFrame(std::span<const double> frame) const;

 private:
  std::shared_ptr<const RealFft> fft_;
  Matrix weights_;
  std::vector<double> centers_hz_;
  int sample_rate_;
};

// FrameSignal + MelFilterbank::Compute.
Matrix ComputeMelEnergies(const AudioSignal &signal, const FrontendConfig &cfg);

// ln(max(fe, floor)) elementwise.
Matrix LogFeatures(const Matrix &mel, double energy_floor);

// Regression deltas with window `order`, edges replicated:
//   d_t = sum_n n (c_{t+n} - c_{t-n}) / (2 sum_n n^2)
Matrix ComputeDeltas(const Matrix &seq, int order);

// e_t = ln(E_t / max_u E_u) with E_t the sum of filter energies in frame t.
// Throws kAllSilent when every frame has zero energy.
std::vector<double> LogNormEnergy(const Matrix &mel);

struct Features {
  Matrix statics;  // T x n_mel log filter energies
  Matrix deltas;
  Matrix delta2;
  std::vector<double> log_norm_energy;

  std::size_t NumFrames() const { return statics.Rows(); }
  std::size_t NumMel() const { return statics.Cols(); }
  // static | delta | delta2 for frame t (3 * n_mel values).
  std::vector<double> Stacked(std::size_t t) const;
};

Features ComputeFeatures(const Matrix &mel, const FrontendConfig &cfg);

enum class NoiseSource { kLeadingFrames, kOracle };

struct NoiseEstimate {
  std::vector<double> en2;  // expected noise energy per filter
  NoiseSource source = NoiseSource::kLeadingFrames;
};

// Mean filter energy over the first n_lead frames. Throws kInvalidNoiseWindow.
NoiseEstimate EstimateNoise(const Matrix &mel, int n_lead);
// Mean filter energy over a Mel sequence of the pure noise signal.
NoiseEstimate EstimateNoiseOracle(const Matrix &noise_mel);

// Per-filter SNR in dB, 10 log10(max(fe - en2, eps) / max(en2, eps)), clamped
// below at 0 dB.
std::vector<double> SegmentalSnr(std::span<const double> fe, const NoiseEstimate &noise,
                                 double eps);

}  // namespace uwasr

#endif  // UWASR_FRONTEND_FRONTEND_H_
