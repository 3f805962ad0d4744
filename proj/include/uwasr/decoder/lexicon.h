// uwasr/decoder/lexicon.h

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

#ifndef UWASR_DECODER_LEXICON_H_
#define UWASR_DECODER_LEXICON_H_

#include <cmath>
#include <string>
#include <vector>

namespace uwasr::decoder {

/// Words as left-to-right HMMs. Every state has a self-loop; non-final
/// states move forward, final states exit the word. State ids are global
/// and cover 0..NumStates()-1 exactly once.
struct Lexicon {
  std::vector<std::string> words;
  std::vector<std::vector<int>> states;
  double self_loop_logprob = std::log(0.5);
  double forward_logprob = std::log(0.5);  // also the word-exit transition

  int NumWords() const { return static_cast<int>(words.size()); }
  int NumStates() const;
  int WordIndex(const std::string &word) const;  // -1 if absent
  // Throws kInvalidConfig.
  void Validate() const;

  // Consecutive state ids in word order.
  static Lexicon FromStateCounts(const std::vector<std::string> &words,
                                 const std::vector<int> &num_states);
};

/// Bigram model with sentence boundaries. Context index NumWords() is the
/// sentence start; successor index NumWords() is the sentence end.
class LanguageModel {
 public:
  LanguageModel() = default;
  explicit LanguageModel(int num_words, double scale = 1.0);

  int NumWords() const { return num_words_; }
  double Scale() const { return scale_; }
  void SetScale(double scale) { scale_ = scale; }

  double LogProb(int prev, int next) const { return logprob_[prev * (num_words_ + 1) + next]; }
  void SetLogProb(int prev, int next, double lp) { logprob_[prev * (num_words_ + 1) + next] = lp; }
  double Start(int word) const { return LogProb(num_words_, word); }
  double End(int word) const { return LogProb(word, num_words_); }

  // Each context's successor probabilities sum to 1 (within 1e-9) and
  // scale > 0. The start context may not go straight to the end symbol.
  void Validate() const;

  // From probabilities; row `prev` (0..V, V = start), column `next`
  // (0..V, V = end).
  static LanguageModel FromProbabilities(const std::vector<std::vector<double>> &probs,
                                         double scale = 1.0);

 private:
  int num_words_ = 0;
  double scale_ = 1.0;
  std::vector<double> logprob_;
};

}  // namespace uwasr::decoder

#endif  // UWASR_DECODER_LEXICON_H_
