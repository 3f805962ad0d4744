// uwasr/base/binary-io.h

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

#ifndef UWASR_BASE_BINARY_IO_H_
#define UWASR_BASE_BINARY_IO_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

// Little-endian scalar encoding, independent of host byte order.
namespace uwasr::binio {

void WriteU8(std::ostream &os, std::uint8_t v);
void WriteU32(std::ostream &os, std::uint32_t v);
void WriteU64(std::ostream &os, std::uint64_t v);
void WriteF32(std::ostream &os, float v);
void WriteF64(std::ostream &os, double v);
void WriteString(std::ostream &os, const std::string &s);  // u32 length + bytes
void WriteMagic(std::ostream &os, const char *magic, std::size_t n);

std::uint8_t ReadU8(std::istream &is);
std::uint32_t ReadU32(std::istream &is);
std::uint64_t ReadU64(std::istream &is);
float ReadF32(std::istream &is);
double ReadF64(std::istream &is);
std::string ReadString(std::istream &is);
// Throws kFormatError if the next n bytes are not `magic`.
void ExpectMagic(std::istream &is, const char *magic, std::size_t n);

}  // namespace uwasr::binio

#endif  // UWASR_BASE_BINARY_IO_H_
