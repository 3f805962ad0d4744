// src/frontend/wave-io.cc

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

#include "uwasr/frontend/wave-io.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>

#include "uwasr/base/binary-io.h"
#include "uwasr/base/error.h"

namespace uwasr {

namespace {
constexpr double kPcmScale = 32768.0;

std::uint16_t ReadU16(std::istream &is) {
  unsigned char b[2];
  is.read(reinterpret_cast<char *>(b), 2);
  if (is.gcount() != 2) Fail(ErrorCode::kFormatError, "truncated WAV");
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

void WriteU16(std::ostream &os, std::uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  os.write(b, 2);
}
}  // namespace

double AudioSignal::MeanPower() const {
  if (samples.empty()) return 0.0;
  double s = 0.0;
  for (double x : samples) s += x * x;
  return s / static_cast<double>(samples.size());
}

void QuantizeToPcm16(std::vector<double> *samples) {
  for (double &x : *samples) {
    double q = std::nearbyint(x * kPcmScale);
    q = std::min(32767.0, std::max(-32768.0, q));
    x = q / kPcmScale;
  }
}

AudioSignal ReadWav(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail(ErrorCode::kIoError, "cannot open " + path);
  binio::ExpectMagic(is, "RIFF", 4);
  binio::ReadU32(is);
  binio::ExpectMagic(is, "WAVE", 4);

  AudioSignal signal;
  bool have_fmt = false;
  while (true) {
    char id[4];
    is.read(id, 4);
    if (is.gcount() != 4) Fail(ErrorCode::kFormatError, path + ": no data chunk");
    std::uint32_t size = binio::ReadU32(is);
    std::string chunk(id, 4);
    if (chunk == "fmt ") {
      std::uint16_t format = ReadU16(is);
      std::uint16_t channels = ReadU16(is);
      std::uint32_t rate = binio::ReadU32(is);
      binio::ReadU32(is);  // byte rate
      ReadU16(is);         // block align
      std::uint16_t bits = ReadU16(is);
      if (format != 1 || channels != 1 || bits != 16)
        Fail(ErrorCode::kFormatError, path + ": only mono 16-bit PCM is supported");
      if (rate == 0) Fail(ErrorCode::kFormatError, path + ": zero sample rate");
      signal.sample_rate = static_cast<int>(rate);
      is.ignore(size - 16 + (size & 1));
      have_fmt = true;
    } else if (chunk == "data") {
      if (!have_fmt) Fail(ErrorCode::kFormatError, path + ": data before fmt");
      std::size_t n = size / 2;
      signal.samples.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        auto v = static_cast<std::int16_t>(ReadU16(is));
        signal.samples[i] = v / kPcmScale;
      }
      return signal;
    } else {
      is.ignore(size + (size & 1));
    }
  }
}

void WriteWav(const std::string &path, const AudioSignal &signal) {
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail(ErrorCode::kIoError, "cannot write " + path);
  const auto n = static_cast<std::uint32_t>(signal.samples.size());
  const auto rate = static_cast<std::uint32_t>(signal.sample_rate);
  os.write("RIFF", 4);
  binio::WriteU32(os, 36 + 2 * n);
  os.write("WAVEfmt ", 8);
  binio::WriteU32(os, 16);
  WriteU16(os, 1);
  WriteU16(os, 1);
  binio::WriteU32(os, rate);
  binio::WriteU32(os, rate * 2);
  WriteU16(os, 2);
  WriteU16(os, 16);
  os.write("data", 4);
  binio::WriteU32(os, 2 * n);
  for (double x : signal.samples) {
    double q = std::nearbyint(x * kPcmScale);
    if (q > 32767.0 || q < -32768.0)
      Fail(ErrorCode::kFormatError, path + ": sample out of 16-bit range");
    WriteU16(os, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }
  if (!os) Fail(ErrorCode::kIoError, "write failed: " + path);
}

}  // namespace uwasr
