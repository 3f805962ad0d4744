// uwasr/frontend/wave-io.h

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

#ifndef UWASR_FRONTEND_WAVE_IO_H_
#define UWASR_FRONTEND_WAVE_IO_H_

#include <string>
#include <vector>

namespace uwasr {

/// Mono audio; samples in [-1, 1].
struct AudioSignal {
  std::vector<double> samples;
  int sample_rate = 16000;

  double MeanPower() const;
};

// Mono 16-bit PCM RIFF/WAVE. Samples are stored as k / 32768.
AudioSignal ReadWav(const std::string &path);
// Throws kFormatError if a sample is not representable as 16-bit PCM without
// clipping (|x| > 32767/32768).
void WriteWav(const std::string &path, const AudioSignal &signal);

// Rounds every sample onto the 16-bit PCM grid, so that files written with
// WriteWav read back bit-exactly.
void QuantizeToPcm16(std::vector<double> *samples);

}  // namespace uwasr

#endif  // UWASR_FRONTEND_WAVE_IO_H_
