// src/decoder/lexicon.cc

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

#include "uwasr/decoder/lexicon.h"

#include <limits>

#include "uwasr/base/error.h"

namespace uwasr::decoder {

int Lexicon::NumStates() const {
  int n = 0;
  for (const auto &s : states) n += static_cast<int>(s.size());
  return n;
}

int Lexicon::WordIndex(const std::string &word) const {
  for (int i = 0; i < NumWords(); ++i)
    if (words[i] == word) return i;
  return -1;
}

void Lexicon::Validate() const {
  Require(!words.empty() && words.size() == states.size(), ErrorCode::kInvalidConfig,
          "lexicon: need one state list per word");
  const int n = NumStates();
  std::vector<bool> seen(n, false);
  for (std::size_t w = 0; w < words.size(); ++w) {
    Require(!states[w].empty(), ErrorCode::kInvalidConfig, "lexicon: word without states");
    for (int s : states[w]) {
      Require(s >= 0 && s < n && !seen[s], ErrorCode::kInvalidConfig,
              "lexicon: state ids must be unique and cover 0..S-1");
      seen[s] = true;
    }
  }
  Require(std::isfinite(self_loop_logprob) && std::isfinite(forward_logprob),
          ErrorCode::kInvalidConfig, "lexicon: transition log-probs must be finite");
}

Lexicon Lexicon::FromStateCounts(const std::vector<std::string> &words,
                                 const std::vector<int> &num_states) {
  Require(words.size() == num_states.size(), ErrorCode::kDimMismatch, "FromStateCounts");
  Lexicon lex;
  lex.words = words;
  int next = 0;
  for (int n : num_states) {
    std::vector<int> ids(n);
    for (int &id : ids) id = next++;
    lex.states.push_back(std::move(ids));
  }
  return lex;
}

LanguageModel::LanguageModel(int num_words, double scale)
    : num_words_(num_words),
      scale_(scale),
      logprob_((num_words + 1) * (num_words + 1), -std::numeric_limits<double>::infinity()) {}

void LanguageModel::Validate() const {
  Require(num_words_ >= 1, ErrorCode::kInvalidConfig, "lm: empty vocabulary");
  Require(scale_ > 0.0, ErrorCode::kInvalidConfig, "lm: scale must be > 0");
  for (int prev = 0; prev <= num_words_; ++prev) {
    double sum = 0.0;
    for (int next = 0; next <= num_words_; ++next) sum += std::exp(LogProb(prev, next));
    Require(std::abs(sum - 1.0) < 1e-9, ErrorCode::kInvalidConfig,
            "lm: context " + std::to_string(prev) + " sums to " + std::to_string(sum));
  }
  Require(Start(num_words_) == -std::numeric_limits<double>::infinity(),
          ErrorCode::kInvalidConfig, "lm: empty sentences are not allowed");
}

LanguageModel LanguageModel::FromProbabilities(const std::vector<std::vector<double>> &probs,
                                               double scale) {
  const int v = static_cast<int>(probs.size()) - 1;
  LanguageModel lm(v, scale);
  for (int prev = 0; prev <= v; ++prev) {
    Require(static_cast<int>(probs[prev].size()) == v + 1, ErrorCode::kDimMismatch,
            "lm probability row width");
    for (int next = 0; next <= v; ++next) lm.SetLogProb(prev, next, std::log(probs[prev][next]));
  }
  return lm;
}

}  // namespace uwasr::decoder
