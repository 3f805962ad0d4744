// src/decoder/viterbi.cc

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

#include "uwasr/decoder/viterbi.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "uwasr/base/error.h"

namespace uwasr::decoder {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Topology {
  std::vector<int> word_of_state;
  std::vector<int> pos_of_state;
  std::vector<int> first;
  std::vector<int> last;

  explicit Topology(const Lexicon &lex)
      : word_of_state(lex.NumStates()), pos_of_state(lex.NumStates()) {
    for (int w = 0; w < lex.NumWords(); ++w) {
      const auto &st = lex.states[w];
      for (std::size_t p = 0; p < st.size(); ++p) {
        word_of_state[st[p]] = w;
        pos_of_state[st[p]] = static_cast<int>(p);
      }
      first.push_back(st.front());
      last.push_back(st.back());
    }
  }
};

inline double Emission(const DecodeTask &task, std::size_t t, int s) {
  return task.weights.empty() ? task.loglik(t, s) : task.weights[t] * task.loglik(t, s);
}

bool WordsLess(const Lexicon &lex, const std::vector<int> &a, const std::vector<int> &b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [&lex](int x, int y) { return lex.words[x] < lex.words[y]; });
}

struct BackPointer {
  int prev = -2;  // -1 at the first frame, -2 when unreachable
  bool entry = false;
};

void FillWords(Hypothesis *hyp, const Lexicon &lex) {
  hyp->words.clear();
  for (int w : hyp->word_ids) hyp->words.push_back(lex.words[w]);
}

}  // namespace

double PseudoLogLikelihood(double posterior, double prior) {
  return std::log(posterior) - std::log(prior);
}

Matrix PseudoLogLikelihoods(const Matrix &log_posteriors, std::span<const double> priors) {
  Require(log_posteriors.Cols() == priors.size(), ErrorCode::kDimMismatch,
          "posterior and prior state counts differ");
  Matrix out = log_posteriors;
  for (std::size_t t = 0; t < out.Rows(); ++t)
    for (std::size_t s = 0; s < out.Cols(); ++s) out(t, s) -= std::log(priors[s]);
  return out;
}

void DecodeTask::Validate() const {
  Require(lexicon != nullptr && lm != nullptr, ErrorCode::kInvalidConfig,
          "decode task needs a lexicon and a language model");
  if (loglik.Rows() == 0) Fail(ErrorCode::kEmptyInput, "no frames to decode");
  Require(loglik.Cols() == static_cast<std::size_t>(lexicon->NumStates()),
          ErrorCode::kDimMismatch, "likelihood columns must equal the lexicon state count");
  Require(lm->NumWords() == lexicon->NumWords(), ErrorCode::kDimMismatch,
          "language model and lexicon vocabularies differ");
  Require(weights.empty() || weights.size() == loglik.Rows(), ErrorCode::kDimMismatch,
          "weight track length must equal the frame count");
  for (double v : loglik.Values())
    Require(std::isfinite(v), ErrorCode::kInvalidConfig, "non-finite log-likelihood");
}

Hypothesis ViterbiDecode(const DecodeTask &task) {
  task.Validate();
  const Lexicon &lex = *task.lexicon;
  const LanguageModel &lm = *task.lm;
  const Topology topo(lex);
  const int num_states = lex.NumStates(), num_words = lex.NumWords();
  const std::size_t num_frames = task.NumFrames();
  const double scale = lm.Scale();

  std::vector<BackPointer> bp(num_frames * num_states);
  auto at = [&](std::size_t t, int s) -> BackPointer & { return bp[t * num_states + s]; };

  // Word history ending at (t, s), oldest first.
  auto history = [&](std::size_t t, int s) {
    std::vector<int> words;
    while (true) {
      const BackPointer &b = at(t, s);
      if (b.entry) words.push_back(topo.word_of_state[s]);
      if (b.prev < 0) break;
      s = b.prev;
      --t;
    }
    std::reverse(words.begin(), words.end());
    return words;
  };
  auto candidate_history = [&](std::size_t t, int prev, bool entry, int word) {
    std::vector<int> h = t == 0 ? std::vector<int>{} : history(t - 1, prev);
    if (entry) h.push_back(word);
    return h;
  };

  std::vector<double> cur(num_states, kNegInf), prev(num_states, kNegInf);
  for (int w = 0; w < num_words; ++w) {
    const int s = topo.first[w];
    const double lm_score = lm.Start(w);
    if (lm_score == kNegInf) continue;
    cur[s] = scale * lm_score + Emission(task, 0, s);
    at(0, s) = {-1, true};
  }

  struct Candidate {
    double score = kNegInf;
    int prev = -2;
    bool entry = false;
  };

  for (std::size_t t = 1; t < num_frames; ++t) {
    std::swap(cur, prev);
    for (int s = 0; s < num_states; ++s) {
      const int w = topo.word_of_state[s];
      const int pos = topo.pos_of_state[s];
      Candidate best;
      auto offer = [&](double score, int from, bool entry) {
        if (score == kNegInf) return;
        if (score > best.score) {
          best = {score, from, entry};
        } else if (score == best.score) {
          if (WordsLess(lex, candidate_history(t, from, entry, w),
                        candidate_history(t, best.prev, best.entry, w)))
            best = {score, from, entry};
        }
      };
      if (prev[s] != kNegInf) offer(prev[s] + lex.self_loop_logprob, s, false);
      if (pos > 0) {
        const int from = lex.states[w][pos - 1];
        if (prev[from] != kNegInf) offer(prev[from] + lex.forward_logprob, from, false);
      } else {
        for (int v = 0; v < num_words; ++v) {
          const int from = topo.last[v];
          if (prev[from] == kNegInf) continue;
          const double lm_score = lm.LogProb(v, w);
          if (lm_score == kNegInf) continue;
          offer(prev[from] + lex.forward_logprob + scale * lm_score, from, true);
        }
      }
      if (best.prev == -2) {
        cur[s] = kNegInf;
        at(t, s) = {};
      } else {
        cur[s] = best.score + Emission(task, t, s);
        at(t, s) = {best.prev, best.entry};
      }
    }
  }

  const std::size_t last_t = num_frames - 1;
  double best_score = kNegInf;
  int best_state = -1;
  std::vector<int> best_words;
  for (int w = 0; w < num_words; ++w) {
    const int s = topo.last[w];
    if (cur[s] == kNegInf || lm.End(w) == kNegInf) continue;
    const double score = cur[s] + lex.forward_logprob + scale * lm.End(w);
    if (score > best_score) {
      best_score = score;
      best_state = s;
      best_words.clear();
    } else if (score == best_score) {
      if (best_words.empty()) best_words = history(last_t, best_state);
      std::vector<int> h = history(last_t, s);
      if (WordsLess(lex, h, best_words)) {
        best_state = s;
        best_words = std::move(h);
      }
    }
  }
  if (best_state < 0) Fail(ErrorCode::kInvalidConfig, "no complete path through the lexicon");

  Hypothesis hyp;
  hyp.score = best_score;
  hyp.state_path.resize(num_frames);
  std::vector<int> entries;
  int s = best_state;
  for (std::size_t t = num_frames; t-- > 0;) {
    hyp.state_path[t] = s;
    const BackPointer &b = at(t, s);
    if (b.entry) entries.push_back(static_cast<int>(t));
    s = b.prev;
  }
  std::reverse(entries.begin(), entries.end());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    WordSegment seg;
    seg.start_frame = entries[i];
    seg.end_frame = i + 1 < entries.size() ? entries[i + 1] : static_cast<int>(num_frames);
    seg.word = topo.word_of_state[hyp.state_path[seg.start_frame]];
    hyp.segments.push_back(seg);
    hyp.word_ids.push_back(seg.word);
  }
  FillWords(&hyp, lex);
  return hyp;
}

double CountPaths(const DecodeTask &task) {
  task.Validate();
  const Lexicon &lex = *task.lexicon;
  const LanguageModel &lm = *task.lm;
  const Topology topo(lex);
  const int num_states = lex.NumStates(), num_words = lex.NumWords();
  std::vector<double> cur(num_states, 0.0), prev(num_states, 0.0);
  for (int w = 0; w < num_words; ++w)
    if (lm.Start(w) != kNegInf) cur[topo.first[w]] += 1.0;
  for (std::size_t t = 1; t < task.NumFrames(); ++t) {
    std::swap(cur, prev);
    for (int s = 0; s < num_states; ++s) {
      const int w = topo.word_of_state[s], pos = topo.pos_of_state[s];
      double n = prev[s];
      if (pos > 0) {
        n += prev[lex.states[w][pos - 1]];
      } else {
        for (int v = 0; v < num_words; ++v)
          if (lm.LogProb(v, w) != kNegInf) n += prev[topo.last[v]];
      }
      cur[s] = n;
    }
  }
  double total = 0.0;
  for (int w = 0; w < num_words; ++w)
    if (lm.End(w) != kNegInf) total += cur[topo.last[w]];
  return total;
}

Hypothesis BruteForceDecode(const DecodeTask &task, double max_paths) {
  const double num_paths = CountPaths(task);
  if (num_paths > max_paths)
    Fail(ErrorCode::kTooLarge, std::to_string(num_paths) + " paths exceed the limit");
  const Lexicon &lex = *task.lexicon;
  const LanguageModel &lm = *task.lm;
  const Topology topo(lex);
  const int num_words = lex.NumWords();
  const std::size_t num_frames = task.NumFrames();
  const double scale = lm.Scale();

  Hypothesis best;
  best.score = kNegInf;
  bool found = false;
  std::vector<int> states(num_frames), entries;
  std::vector<int> words;

  // score includes everything up to and including frame t's emission.
  std::function<void(std::size_t, int, double)> extend = [&](std::size_t t, int s, double score) {
    states[t] = s;
    const int w = topo.word_of_state[s];
    if (t + 1 == num_frames) {
      if (s != topo.last[w] || lm.End(w) == kNegInf) return;
      const double total = score + lex.forward_logprob + scale * lm.End(w);
      if (!found || total > best.score ||
          (total == best.score && WordsLess(lex, words, best.word_ids))) {
        found = true;
        best.score = total;
        best.word_ids = words;
        best.state_path = states;
        best.segments.clear();
        for (std::size_t i = 0; i < entries.size(); ++i)
          best.segments.push_back(
              {words[i], entries[i],
               i + 1 < entries.size() ? entries[i + 1] : static_cast<int>(num_frames)});
      }
      return;
    }
    const std::size_t nt = t + 1;
    extend(nt, s, score + lex.self_loop_logprob + Emission(task, nt, s));
    const int pos = topo.pos_of_state[s];
    if (s != topo.last[w]) {
      const int next = lex.states[w][pos + 1];
      extend(nt, next, score + lex.forward_logprob + Emission(task, nt, next));
      return;
    }
    for (int v = 0; v < num_words; ++v) {
      const double lm_score = lm.LogProb(w, v);
      if (lm_score == kNegInf) continue;
      const int next = topo.first[v];
      words.push_back(v);
      entries.push_back(static_cast<int>(nt));
      extend(nt, next, score + lex.forward_logprob + scale * lm_score + Emission(task, nt, next));
      words.pop_back();
      entries.pop_back();
    }
  };

  for (int w = 0; w < num_words; ++w) {
    if (lm.Start(w) == kNegInf) continue;
    const int s = topo.first[w];
    words.assign(1, w);
    entries.assign(1, 0);
    extend(0, s, scale * lm.Start(w) + Emission(task, 0, s));
  }
  if (!found) Fail(ErrorCode::kInvalidConfig, "no complete path through the lexicon");
  FillWords(&best, lex);
  return best;
}

double ScorePath(const DecodeTask &task, const std::vector<PathWord> &path) {
  task.Validate();
  const Lexicon &lex = *task.lexicon;
  const LanguageModel &lm = *task.lm;
  Require(!path.empty(), ErrorCode::kDimMismatch, "empty path");
  const double scale = lm.Scale();
  double score = 0.0;
  std::size_t t = 0;
  int prev_word = -1;
  for (const PathWord &pw : path) {
    const auto &st = lex.states.at(pw.word);
    Require(pw.durations.size() == st.size(), ErrorCode::kDimMismatch,
            "one duration per state required");
    score += scale * (prev_word < 0 ? lm.Start(pw.word) : lm.LogProb(prev_word, pw.word));
    if (prev_word >= 0) score += lex.forward_logprob;  // exit of the previous word
    for (std::size_t p = 0; p < st.size(); ++p) {
      Require(pw.durations[p] >= 1, ErrorCode::kDimMismatch, "durations must be >= 1");
      if (p > 0) score += lex.forward_logprob;
      for (int d = 0; d < pw.durations[p]; ++d) {
        Require(t < task.NumFrames(), ErrorCode::kDimMismatch, "path longer than T");
        if (d > 0) score += lex.self_loop_logprob;
        score += Emission(task, t, st[p]);
        ++t;
      }
    }
    prev_word = pw.word;
  }
  Require(t == task.NumFrames(), ErrorCode::kDimMismatch, "path shorter than T");
  score += lex.forward_logprob + scale * lm.End(prev_word);
  return score;
}

}  // namespace uwasr::decoder
