// src/decoder/wer.cc

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

#include "uwasr/decoder/wer.h"

#include <algorithm>
#include <sstream>

#include "uwasr/base/error.h"

namespace uwasr::decoder {

WerResult ComputeWer(const std::vector<std::string> &reference,
                     const std::vector<std::string> &hypothesis) {
  if (reference.empty()) Fail(ErrorCode::kEmptyReference, "reference has no words");
  const std::size_t n = reference.size(), m = hypothesis.size();
  std::vector<int> cost((n + 1) * (m + 1));
  auto c = [&](std::size_t i, std::size_t j) -> int & { return cost[i * (m + 1) + j]; };
  for (std::size_t i = 0; i <= n; ++i) c(i, 0) = static_cast<int>(i);
  for (std::size_t j = 0; j <= m; ++j) c(0, j) = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      const int diag = c(i - 1, j - 1) + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
      c(i, j) = std::min({diag, c(i - 1, j) + 1, c(i, j - 1) + 1});
    }

  WerResult r;
  r.ref_length = static_cast<int>(n);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = reference[i - 1] == hypothesis[j - 1];
      if (c(i, j) == c(i - 1, j - 1) + (same ? 0 : 1)) {
        r.alignment.push_back({same ? EditOp::kMatch : EditOp::kSubstitution,
                               reference[i - 1], hypothesis[j - 1]});
        if (!same) ++r.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && c(i, j) == c(i - 1, j) + 1) {
      r.alignment.push_back({EditOp::kDeletion, reference[i - 1], ""});
      ++r.deletions;
      --i;
    } else {
      r.alignment.push_back({EditOp::kInsertion, "", hypothesis[j - 1]});
      ++r.insertions;
      --j;
    }
  }
  std::reverse(r.alignment.begin(), r.alignment.end());
  r.wer_percent = 100.0 * r.Errors() / static_cast<double>(n);
  return r;
}

double PooledWer(const std::vector<WerResult> &results) {
  long errors = 0, words = 0;
  for (const auto &r : results) {
    errors += r.Errors();
    words += r.ref_length;
  }
  if (words == 0) Fail(ErrorCode::kEmptyReference, "no reference words to pool");
  return 100.0 * static_cast<double>(errors) / static_cast<double>(words);
}

std::vector<std::string> SplitWords(const std::string &text) {
  std::istringstream in(text);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

std::string JoinWords(const std::vector<std::string> &words) {
  std::string out;
  for (const auto &w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace uwasr::decoder
