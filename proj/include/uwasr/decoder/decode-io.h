// uwasr/decoder/decode-io.h

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

#ifndef UWASR_DECODER_DECODE_IO_H_
#define UWASR_DECODER_DECODE_IO_H_

#include <string>
#include <vector>

#include "uwasr/decoder/lexicon.h"
#include "uwasr/decoder/wer.h"

namespace uwasr::decoder {

// Text lexicon: one line per word, "word state_id state_id ...".
void WriteLexicon(const std::string &path, const Lexicon &lexicon);
Lexicon ReadLexicon(const std::string &path);

// Text bigram model: "scale <lambda>" then "prev next logprob" lines using
// <s> and </s> for the sentence boundaries. Missing pairs are -inf.
void WriteLanguageModel(const std::string &path, const LanguageModel &lm,
                        const Lexicon &lexicon);
LanguageModel ReadLanguageModel(const std::string &path, const Lexicon &lexicon);

struct DecodeRecord {
  std::string utt_id;
  std::string reference;
  std::string hypothesis;
  double score = 0.0;
  WerResult wer;
};

// utt_id,reference,hypothesis,score,S,D,I,wer
void WriteDecodeCsv(const std::string &path, const std::vector<DecodeRecord> &records);
// Per-utterance REF/HYP/EVAL lines.
void WriteAlignmentReport(const std::string &path, const std::vector<DecodeRecord> &records);

}  // namespace uwasr::decoder

#endif  // UWASR_DECODER_DECODE_IO_H_
