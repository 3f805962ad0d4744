// uwasr/decoder/viterbi.h

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

#ifndef UWASR_DECODER_VITERBI_H_
#define UWASR_DECODER_VITERBI_H_

#include <span>
#include <string>
#include <vector>

#include "uwasr/base/matrix.h"
#include "uwasr/decoder/lexicon.h"

namespace uwasr::decoder {

// log p(x|s) = log p(s|x) - log p(s)
double PseudoLogLikelihood(double posterior, double prior);
// T x S from log posteriors and state priors.
Matrix PseudoLogLikelihoods(const Matrix &log_posteriors, std::span<const double> priors);

struct DecodeTask {
  Matrix loglik;                // T x S pseudo-log-likelihoods
  std::vector<double> weights;  // per-frame UW in (0, 1]; empty = unweighted
  const Lexicon *lexicon = nullptr;
  const LanguageModel *lm = nullptr;

  std::size_t NumFrames() const { return loglik.Rows(); }
  // Throws kEmptyInput, kDimMismatch, kInvalidConfig.
  void Validate() const;
};

struct WordSegment {
  int word = 0;
  int start_frame = 0;  // inclusive
  int end_frame = 0;    // exclusive
};

struct Hypothesis {
  std::vector<int> word_ids;
  std::vector<std::string> words;
  double score = 0.0;
  std::vector<WordSegment> segments;  // tiles [0, T)
  std::vector<int> state_path;        // one state per frame
};

/// Exact weighted Viterbi search. Maximizes
///   sum_t UW_t * loglik(t, q_t) + transition log-probs + scale * log P(W)
/// over every state path the lexicon allows. Exact score ties resolve to the
/// lexicographically smaller word history.
Hypothesis ViterbiDecode(const DecodeTask &task);

// Number of complete state paths (as a double; can be huge).
double CountPaths(const DecodeTask &task);

/// Enumerates every path. Same objective as ViterbiDecode; ties go to the
/// lexicographically smallest word string. Throws kTooLarge when there are
/// more than max_paths paths.
Hypothesis BruteForceDecode(const DecodeTask &task, double max_paths = 1e7);

// A path given as words with per-state durations in frames.
struct PathWord {
  int word = 0;
  std::vector<int> durations;  // one per state of the word, each >= 1
};
// Objective value of an explicit path; throws kDimMismatch if its length is
// not T or a duration is invalid.
double ScorePath(const DecodeTask &task, const std::vector<PathWord> &path);

}  // namespace uwasr::decoder

#endif  // UWASR_DECODER_VITERBI_H_
