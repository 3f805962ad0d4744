// uwasr/decoder/wer.h

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

#ifndef UWASR_DECODER_WER_H_
#define UWASR_DECODER_WER_H_

#include <string>
#include <vector>

namespace uwasr::decoder {

enum class EditOp { kMatch, kSubstitution, kDeletion, kInsertion };

struct AlignedPair {
  EditOp op;
  std::string ref;  // empty for insertions
  std::string hyp;  // empty for deletions
};

struct WerResult {
  int substitutions = 0;
  int deletions = 0;
  int insertions = 0;
  int ref_length = 0;
  double wer_percent = 0.0;
  std::vector<AlignedPair> alignment;

  int Errors() const { return substitutions + deletions + insertions; }
};

// Unit-cost Levenshtein alignment. Throws kEmptyReference.
WerResult ComputeWer(const std::vector<std::string> &reference,
                     const std::vector<std::string> &hypothesis);

// Pooled WER over several results: 100 * sum(errors) / sum(ref lengths).
double PooledWer(const std::vector<WerResult> &results);

std::vector<std::string> SplitWords(const std::string &text);
std::string JoinWords(const std::vector<std::string> &words);

}  // namespace uwasr::decoder

#endif  // UWASR_DECODER_WER_H_
