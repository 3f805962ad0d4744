// src/frontend/feature-archive.cc

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

#include "uwasr/frontend/feature-archive.h"

#include <cstdio>

#include "uwasr/base/binary-io.h"
#include "uwasr/base/error.h"

namespace uwasr {

namespace {
constexpr char kMagic[] = "UWFEATS1";
constexpr std::uint32_t kVersion = 1;

void AppendNumber(std::string *line, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), ",%.9g", v);
  line->append(buf);
}
}  // namespace

void WriteFeatureCsvHeader(std::ostream &os, std::size_t n_mel) {
  os << "utt_id,frame,enhanced";
  for (const char *prefix : {"s", "d", "dd"})
    for (std::size_t m = 0; m < n_mel; ++m) os << ',' << prefix << m;
  os << ",log_norm_energy\n";
}

void WriteFeatureCsvRows(std::ostream &os, const std::string &utt_id,
                         const Features &features, bool enhanced) {
  for (std::size_t t = 0; t < features.NumFrames(); ++t) {
    std::string line = utt_id + "," + std::to_string(t) + (enhanced ? ",1" : ",0");
    for (double v : features.Stacked(t)) AppendNumber(&line, v);
    AppendNumber(&line, features.log_norm_energy[t]);
    os << line << '\n';
  }
  if (!os) Fail(ErrorCode::kIoError, "feature CSV write failed");
}

void WriteFeatureArchive(std::ostream &os, const std::vector<ArchiveEntry> &entries) {
  const std::uint32_t n_mel =
      entries.empty() ? 0 : static_cast<std::uint32_t>(entries.front().features.NumMel());
  binio::WriteMagic(os, kMagic, 8);
  binio::WriteU32(os, kVersion);
  binio::WriteU32(os, n_mel);
  binio::WriteU32(os, static_cast<std::uint32_t>(entries.size()));
  for (const auto &e : entries) {
    Require(e.features.NumMel() == n_mel, ErrorCode::kDimMismatch,
            "archive entries must share n_mel");
    binio::WriteString(os, e.utt_id);
    binio::WriteU8(os, e.enhanced ? 1 : 0);
    binio::WriteU32(os, static_cast<std::uint32_t>(e.features.NumFrames()));
    binio::WriteU32(os, 3 * n_mel + 1);
    for (std::size_t t = 0; t < e.features.NumFrames(); ++t) {
      for (double v : e.features.Stacked(t)) binio::WriteF32(os, static_cast<float>(v));
      binio::WriteF32(os, static_cast<float>(e.features.log_norm_energy[t]));
    }
  }
  if (!os) Fail(ErrorCode::kIoError, "feature archive write failed");
}

std::vector<ArchiveEntry> ReadFeatureArchive(std::istream &is) {
  binio::ExpectMagic(is, kMagic, 8);
  const std::uint32_t version = binio::ReadU32(is);
  Require(version == kVersion, ErrorCode::kFormatError,
          "unsupported archive version " + std::to_string(version));
  const std::uint32_t n_mel = binio::ReadU32(is);
  const std::uint32_t count = binio::ReadU32(is);
  std::vector<ArchiveEntry> entries(count);
  for (auto &e : entries) {
    e.utt_id = binio::ReadString(is);
    e.enhanced = binio::ReadU8(is) != 0;
    const std::uint32_t frames = binio::ReadU32(is);
    const std::uint32_t dim = binio::ReadU32(is);
    Require(dim == 3 * n_mel + 1, ErrorCode::kFormatError, "record dimension");
    auto &f = e.features;
    f.statics.Resize(frames, n_mel);
    f.deltas.Resize(frames, n_mel);
    f.delta2.Resize(frames, n_mel);
    f.log_norm_energy.resize(frames);
    for (std::uint32_t t = 0; t < frames; ++t) {
      for (Matrix *m : {&f.statics, &f.deltas, &f.delta2})
        for (std::uint32_t k = 0; k < n_mel; ++k) (*m)(t, k) = binio::ReadF32(is);
      f.log_norm_energy[t] = binio::ReadF32(is);
    }
  }
  return entries;
}

}  // namespace uwasr
