// src/base/binary-io.cc

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

#include "uwasr/base/binary-io.h"

#include <bit>
#include <cstring>

#include "uwasr/base/error.h"

namespace uwasr::binio {

namespace {

void PutLe(std::ostream &os, std::uint64_t v, int bytes) {
  char buf[8];
  for (int i = 0; i < bytes; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(buf, bytes);
  if (!os) Fail(ErrorCode::kIoError, "write failed");
}

std::uint64_t GetLe(std::istream &is, int bytes) {
  unsigned char buf[8];
  is.read(reinterpret_cast<char *>(buf), bytes);
  if (is.gcount() != bytes) Fail(ErrorCode::kFormatError, "unexpected end of stream");
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

}  // namespace

void WriteU8(std::ostream &os, std::uint8_t v) { PutLe(os, v, 1); }
void WriteU32(std::ostream &os, std::uint32_t v) { PutLe(os, v, 4); }
void WriteU64(std::ostream &os, std::uint64_t v) { PutLe(os, v, 8); }
void WriteF32(std::ostream &os, float v) { PutLe(os, std::bit_cast<std::uint32_t>(v), 4); }
void WriteF64(std::ostream &os, double v) { PutLe(os, std::bit_cast<std::uint64_t>(v), 8); }

void WriteString(std::ostream &os, const std::string &s) {
  WriteU32(os, static_cast<std::uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void WriteMagic(std::ostream &os, const char *magic, std::size_t n) {
  os.write(magic, static_cast<std::streamsize>(n));
}

std::uint8_t ReadU8(std::istream &is) { return static_cast<std::uint8_t>(GetLe(is, 1)); }
std::uint32_t ReadU32(std::istream &is) { return static_cast<std::uint32_t>(GetLe(is, 4)); }
std::uint64_t ReadU64(std::istream &is) { return GetLe(is, 8); }
float ReadF32(std::istream &is) {
  return std::bit_cast<float>(static_cast<std::uint32_t>(GetLe(is, 4)));
}
double ReadF64(std::istream &is) { return std::bit_cast<double>(GetLe(is, 8)); }

std::string ReadString(std::istream &is) {
  std::uint32_t n = ReadU32(is);
  std::string s(n, '\0');
  is.read(s.data(), n);
  if (static_cast<std::uint32_t>(is.gcount()) != n)
    Fail(ErrorCode::kFormatError, "truncated string");
  return s;
}

void ExpectMagic(std::istream &is, const char *magic, std::size_t n) {
  std::string got(n, '\0');
  is.read(got.data(), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(is.gcount()) != n || std::memcmp(got.data(), magic, n) != 0)
    Fail(ErrorCode::kFormatError, "bad magic, expected '" + std::string(magic, n) + "'");
}

}  // namespace uwasr::binio
