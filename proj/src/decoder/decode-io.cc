// src/decoder/decode-io.cc

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

#include "uwasr/decoder/decode-io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "uwasr/base/error.h"

namespace uwasr::decoder {

namespace {

std::ofstream OpenOut(const std::string &path) {
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kIoError, "cannot write " + path);
  out.precision(17);
  return out;
}

std::ifstream OpenIn(const std::string &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIoError, "cannot read " + path);
  return in;
}

void Close(std::ofstream &out, const std::string &path) {
  out.close();
  if (!out) Fail(ErrorCode::kIoError, "write failed for " + path);
}

}  // namespace

void WriteLexicon(const std::string &path, const Lexicon &lexicon) {
  lexicon.Validate();
  auto out = OpenOut(path);
  for (int w = 0; w < lexicon.NumWords(); ++w) {
    out << lexicon.words[w];
    for (int s : lexicon.states[w]) out << ' ' << s;
    out << '\n';
  }
  Close(out, path);
}

Lexicon ReadLexicon(const std::string &path) {
  auto in = OpenIn(path);
  Lexicon lex;
  for (std::string line; std::getline(in, line);) {
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    std::vector<int> states;
    for (int s; ls >> s;) states.push_back(s);
    if (!ls.eof()) Fail(ErrorCode::kFormatError, "bad lexicon line: " + line);
    lex.words.push_back(word);
    lex.states.push_back(states);
  }
  lex.Validate();
  return lex;
}

void WriteLanguageModel(const std::string &path, const LanguageModel &lm,
                        const Lexicon &lexicon) {
  const int v = lm.NumWords();
  Require(v == lexicon.NumWords(), ErrorCode::kDimMismatch, "lm and lexicon sizes differ");
  auto out = OpenOut(path);
  out << "scale " << lm.Scale() << '\n';
  for (int p = 0; p <= v; ++p)
    for (int n = 0; n <= v; ++n) {
      const double lp = lm.LogProb(p, n);
      if (lp == -std::numeric_limits<double>::infinity()) continue;
      out << (p == v ? "<s>" : lexicon.words[p]) << ' '
          << (n == v ? "</s>" : lexicon.words[n]) << ' ' << lp << '\n';
    }
  Close(out, path);
}

LanguageModel ReadLanguageModel(const std::string &path, const Lexicon &lexicon) {
  auto in = OpenIn(path);
  const int v = lexicon.NumWords();
  LanguageModel lm(v);
  auto index = [&](const std::string &w, bool context) {
    if (context && w == "<s>") return v;
    if (!context && w == "</s>") return v;
    const int i = lexicon.WordIndex(w);
    if (i < 0) Fail(ErrorCode::kUnknownWord, "language model word not in lexicon: " + w);
    return i;
  };
  for (std::string line; std::getline(in, line);) {
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a)) continue;
    if (a == "scale") {
      double scale;
      if (!(ls >> scale)) Fail(ErrorCode::kFormatError, "bad scale line: " + line);
      lm.SetScale(scale);
      continue;
    }
    double lp;
    if (!(ls >> b >> lp)) Fail(ErrorCode::kFormatError, "bad bigram line: " + line);
    lm.SetLogProb(index(a, true), index(b, false), lp);
  }
  lm.Validate();
  return lm;
}

void WriteDecodeCsv(const std::string &path, const std::vector<DecodeRecord> &records) {
  auto out = OpenOut(path);
  out << "utt_id,reference,hypothesis,score,S,D,I,wer\n";
  for (const auto &r : records) {
    char wer[32];
    std::snprintf(wer, sizeof(wer), "%.4f", r.wer.wer_percent);
    out << r.utt_id << ',' << r.reference << ',' << r.hypothesis << ',' << r.score << ','
        << r.wer.substitutions << ',' << r.wer.deletions << ',' << r.wer.insertions << ','
        << wer << '\n';
  }
  Close(out, path);
}

void WriteAlignmentReport(const std::string &path, const std::vector<DecodeRecord> &records) {
  auto out = OpenOut(path);
  for (const auto &r : records) {
    std::string ref_line, hyp_line, eval_line;
    for (const auto &p : r.wer.alignment) {
      const std::string ref = p.ref.empty() ? "***" : p.ref;
      const std::string hyp = p.hyp.empty() ? "***" : p.hyp;
      const std::size_t width = std::max(ref.size(), hyp.size());
      const char *mark = p.op == EditOp::kMatch          ? ""
                         : p.op == EditOp::kSubstitution ? "S"
                         : p.op == EditOp::kDeletion     ? "D"
                                                         : "I";
      auto pad = [width](std::string s) {
        s.resize(width, ' ');
        return s + ' ';
      };
      ref_line += pad(ref);
      hyp_line += pad(hyp);
      eval_line += pad(mark);
    }
    out << "id: " << r.utt_id << '\n'
        << "REF:  " << ref_line << '\n'
        << "HYP:  " << hyp_line << '\n'
        << "EVAL: " << eval_line << '\n'
        << "Scores: (#C #S #D #I) "
        << r.wer.ref_length - r.wer.substitutions - r.wer.deletions << ' '
        << r.wer.substitutions << ' ' << r.wer.deletions << ' ' << r.wer.insertions << "\n\n";
  }
  Close(out, path);
}

}  // namespace uwasr::decoder
