// uwasr/frontend/feature-archive.h

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

#ifndef UWASR_FRONTEND_FEATURE_ARCHIVE_H_
#define UWASR_FRONTEND_FEATURE_ARCHIVE_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "uwasr/frontend/frontend.h"

namespace uwasr {

// CSV layout, one row per frame:
//   utt_id,frame,enhanced,s0..s{n-1},d0..d{n-1},dd0..dd{n-1},log_norm_energy
void WriteFeatureCsvHeader(std::ostream &os, std::size_t n_mel);
void WriteFeatureCsvRows(std::ostream &os, const std::string &utt_id,
                         const Features &features, bool enhanced);

// Binary archive, all fields little-endian:
//   magic "UWFEATS1" (8 bytes)
//   u32 version (1), u32 n_mel, u32 num_utterances
//   per utterance:
//     u32 id length, id bytes, u8 enhanced flag,
//     u32 num_frames, u32 dim (= 3 n_mel + 1),
//     num_frames * dim float32, each row laid out as in the CSV.
struct ArchiveEntry {
  std::string utt_id;
  bool enhanced = false;
  Features features;
};

void WriteFeatureArchive(std::ostream &os, const std::vector<ArchiveEntry> &entries);
std::vector<ArchiveEntry> ReadFeatureArchive(std::istream &is);

}  // namespace uwasr

#endif  // UWASR_FRONTEND_FEATURE_ARCHIVE_H_
