// src/corpus/corpus.cc

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

#include "uwasr/corpus/corpus.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "uwasr/base/error.h"
#include "uwasr/base/rng.h"
#include "uwasr/decoder/decode-io.h"
#include "uwasr/decoder/wer.h"

namespace uwasr::corpus {

namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Plan {
  std::string id;
  std::string split;
  std::string source_id;  // seeds the clean audio and transcript
  NoiseType noise = NoiseType::kNone;
  double snr_min = 0.0;
  double snr_max = 0.0;
};

std::string MakeId(const std::string &split, int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "_%04d", i);
  return split + buf;
}

double DrawSnr(std::uint64_t master, const std::string &id, double lo, double hi) {
  Rng rng(DeriveSeed(master, id + "/snr"));
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::string FormatDouble(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace

TrainingCondition ParseTrainingCondition(const std::string &name) {
  if (name == "clean") return TrainingCondition::kClean;
  if (name == "multi-noise") return TrainingCondition::kMultiNoise;
  Fail(ErrorCode::kInvalidConfig, "unknown training condition: " + name);
}

std::string TrainingConditionName(TrainingCondition c) {
  return c == TrainingCondition::kClean ? "clean" : "multi-noise";
}

void CorpusConfig::Validate() const {
  vocab.Validate();
  Require(min_words >= 1 && max_words >= min_words, ErrorCode::kInvalidConfig,
          "bad words-per-utterance range");
  Require(!noise_types.empty(), ErrorCode::kInvalidConfig, "no noise types");
  for (NoiseType t : noise_types)
    Require(t != NoiseType::kNone, ErrorCode::kInvalidConfig, "noise type 'none' not allowed");
  for (auto [lo, hi] : {std::pair{train_snr_min, train_snr_max}, {test_snr_min, test_snr_max}})
    Require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi, ErrorCode::kInvalidConfig,
            "bad SNR range");
  Require(clean_fraction >= 0.0 && clean_fraction <= 1.0, ErrorCode::kInvalidConfig,
          "clean_fraction must be in [0, 1]");
  Require(num_train >= 1 && num_dev >= 1 && num_test >= 1, ErrorCode::kInvalidConfig,
          "split counts must be >= 1");
  Require(rms > 0.0 && rms < 0.5, ErrorCode::kInvalidConfig, "rms must be in (0, 0.5)");
}

std::vector<const UtteranceRecord *> Corpus::Split(const std::string &name) const {
  std::vector<const UtteranceRecord *> out;
  for (const auto &r : records)
    if (r.split == name) out.push_back(&r);
  return out;
}

std::vector<std::string> Corpus::NoisyTestSplits() const {
  std::vector<std::string> out;
  for (NoiseType t : config.noise_types) out.push_back("test-" + NoiseTypeName(t));
  return out;
}

std::vector<std::string> Corpus::SplitNames() const {
  std::vector<std::string> out{"train", "dev", "test-clean"};
  for (auto &s : NoisyTestSplits()) out.push_back(s);
  return out;
}

std::vector<std::string> ScoredWords(const std::vector<std::string> &words) {
  std::vector<std::string> out;
  for (const auto &w : words)
    if (w != kSilenceWord) out.push_back(w);
  return out;
}

Corpus BuildCorpus(const CorpusConfig &cfg, const FrontendConfig &fe_cfg) {
  cfg.Validate();
  fe_cfg.Validate(16000);
  Corpus corpus;
  corpus.config = cfg;
  corpus.vocab = BuildVocabulary(cfg.vocab, fe_cfg.n_mel, DeriveSeed(cfg.seed, "vocabulary"));

  std::vector<Plan> plans;
  const int types = static_cast<int>(cfg.noise_types.size());
  auto add_mixed = [&](const std::string &split, int count) {
    std::vector<int> order(count);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(DeriveSeed(cfg.seed, split + "/clean-subset"));
    std::shuffle(order.begin(), order.end(), rng);
    int num_clean = count;
    if (cfg.condition == TrainingCondition::kMultiNoise)
      num_clean = static_cast<int>(std::lround(cfg.clean_fraction * count));
    std::vector<bool> is_clean(count, false);
    for (int i = 0; i < num_clean; ++i) is_clean[order[i]] = true;
    int noisy_index = 0;
    for (int i = 0; i < count; ++i) {
      Plan p{MakeId(split, i), split, MakeId(split, i)};
      if (!is_clean[i]) {
        p.noise = cfg.noise_types[noisy_index++ % types];
        p.snr_min = cfg.train_snr_min;
        p.snr_max = cfg.train_snr_max;
      }
      plans.push_back(p);
    }
  };
  add_mixed("train", cfg.num_train);
  add_mixed("dev", cfg.num_dev);
  for (int i = 0; i < cfg.num_test; ++i)
    plans.push_back({MakeId("test-clean", i), "test-clean", MakeId("test-clean", i)});
  for (NoiseType t : cfg.noise_types) {
    const std::string split = "test-" + NoiseTypeName(t);
    for (int i = 0; i < cfg.num_test; ++i)
      plans.push_back({MakeId(split, i), split, MakeId("test-clean", i), t, cfg.test_snr_min,
                       cfg.test_snr_max});
  }

  corpus.records.resize(plans.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < plans.size(); ++i) {
    try {
      const Plan &p = plans[i];
      UtteranceRecord &r = corpus.records[i];
      r.id = p.id;
      r.split = p.split;
      r.words = SampleTranscript(corpus.vocab, cfg.min_words, cfg.max_words,
                                 DeriveSeed(cfg.seed, p.source_id + "/words"));
      SynthResult s = SynthUtterance(r.words, corpus.vocab, fe_cfg,
                                     DeriveSeed(cfg.seed, p.source_id + "/audio"), cfg.rms);
      r.clean = std::move(s.audio);
      r.alignment = std::move(s.alignment);
      r.noise_type = p.noise;
      r.snr_db = kInf;
      if (p.noise != NoiseType::kNone) {
        r.snr_db = DrawSnr(cfg.seed, p.id, p.snr_min, p.snr_max);
        NoisyPair pair = AddNoise(r.clean, p.noise, r.snr_db, DeriveSeed(cfg.seed, p.id + "/noise"));
        r.noisy = std::move(pair.noisy);
        r.noise = std::move(pair.noise);
      }
    } catch (...) {
#pragma omp critical(uwasr_corpus_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return corpus;
}

void WriteCorpus(const Corpus &corpus, const std::string &dir) {
  std::error_code ec;
  fs::create_directories(fs::path(dir) / "wav", ec);
  fs::create_directories(fs::path(dir) / "align", ec);
  if (ec) Fail(ErrorCode::kIoError, "cannot create " + dir + ": " + ec.message());

  decoder::WriteLexicon((fs::path(dir) / "lexicon.txt").string(), corpus.vocab.lexicon);
  decoder::WriteLanguageModel((fs::path(dir) / "lm.txt").string(), corpus.vocab.lm,
                              corpus.vocab.lexicon);
  {
    const std::string path = (fs::path(dir) / "templates.csv").string();
    std::ofstream out(path);
    if (!out) Fail(ErrorCode::kIoError, "cannot write " + path);
    out << "state,min_frames,max_frames,envelope...\n";
    for (std::size_t s = 0; s < corpus.vocab.templates.size(); ++s) {
      const auto &t = corpus.vocab.templates[s];
      out << s << ',' << t.min_frames << ',' << t.max_frames;
      for (double v : t.envelope) out << ',' << FormatDouble(v);
      out << '\n';
    }
    if (!out) Fail(ErrorCode::kIoError, "write failed for " + path);
  }

  const std::string manifest = (fs::path(dir) / "manifest.txt").string();
  std::ofstream man(manifest);
  if (!man) Fail(ErrorCode::kIoError, "cannot write " + manifest);
  man << "# id\tsplit\ttranscript\tclean_wav\tnoisy_wav\tnoise_wav\tsnr_db\tnoise_type\n";
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    try {
      const auto &r = corpus.records[i];
      WriteWav((fs::path(dir) / "wav" / (r.id + "_clean.wav")).string(), r.clean);
      if (r.Degraded()) {
        WriteWav((fs::path(dir) / "wav" / (r.id + "_noisy.wav")).string(), r.noisy);
        WriteWav((fs::path(dir) / "wav" / (r.id + "_noise.wav")).string(), r.noise);
      }
      const std::string apath = (fs::path(dir) / "align" / (r.id + ".csv")).string();
      std::ofstream a(apath);
      a << "frame,state\n";
      for (std::size_t t = 0; t < r.alignment.size(); ++t) a << t << ',' << r.alignment[t] << '\n';
      if (!a) Fail(ErrorCode::kIoError, "write failed for " + apath);
    } catch (...) {
#pragma omp critical(uwasr_corpus_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  for (const auto &r : corpus.records) {
    const std::string noisy = r.Degraded() ? "wav/" + r.id + "_noisy.wav" : "-";
    const std::string noise = r.Degraded() ? "wav/" + r.id + "_noise.wav" : "-";
    man << r.id << '\t' << r.split << '\t' << decoder::JoinWords(r.words) << "\twav/" << r.id
        << "_clean.wav\t" << noisy << '\t' << noise << '\t' << FormatDouble(r.snr_db) << '\t'
        << NoiseTypeName(r.noise_type) << '\n';
  }
  man.close();
  if (!man) Fail(ErrorCode::kIoError, "write failed for " + manifest);
}

Corpus ReadCorpus(const std::string &dir) {
  const fs::path root(dir);
  const fs::path manifest = root / "manifest.txt";
  if (!fs::exists(manifest)) Fail(ErrorCode::kMissingDependency, "no corpus manifest in " + dir);
  Corpus corpus;
  corpus.vocab.lexicon = decoder::ReadLexicon((root / "lexicon.txt").string());
  corpus.vocab.lm = decoder::ReadLanguageModel((root / "lm.txt").string(), corpus.vocab.lexicon);
  corpus.vocab.silence_word = corpus.vocab.lexicon.WordIndex(kSilenceWord);
  {
    std::ifstream in(root / "templates.csv");
    if (!in) Fail(ErrorCode::kIoError, "cannot read templates.csv in " + dir);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ls(line);
      int s;
      StateTemplate t;
      if (!(ls >> s >> t.min_frames >> t.max_frames))
        Fail(ErrorCode::kFormatError, "bad template line");
      for (double v; ls >> v;) t.envelope.push_back(v);
      corpus.vocab.templates.push_back(std::move(t));
    }
  }

  std::ifstream man(manifest);
  std::vector<std::string> noise_seen;
  for (std::string line; std::getline(man, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string field; std::getline(ls, field, '\t');) f.push_back(field);
    if (f.size() != 8) Fail(ErrorCode::kFormatError, "bad manifest line: " + line);
    UtteranceRecord r;
    r.id = f[0];
    r.split = f[1];
    r.words = decoder::SplitWords(f[2]);
    r.clean = ReadWav((root / f[3]).string());
    if (f[4] != "-") r.noisy = ReadWav((root / f[4]).string());
    if (f[5] != "-") r.noise = ReadWav((root / f[5]).string());
    r.snr_db = std::strtod(f[6].c_str(), nullptr);
    r.noise_type = ParseNoiseType(f[7]);
    std::ifstream a(root / "align" / (r.id + ".csv"));
    if (!a) Fail(ErrorCode::kIoError, "missing alignment for " + r.id);
    std::string aline;
    std::getline(a, aline);
    while (std::getline(a, aline)) {
      const auto comma = aline.find(',');
      if (comma == std::string::npos) continue;
      r.alignment.push_back(std::stoi(aline.substr(comma + 1)));
    }
    if (r.split.rfind("test-", 0) == 0 && r.split != "test-clean" &&
        std::find(noise_seen.begin(), noise_seen.end(), f[7]) == noise_seen.end())
      noise_seen.push_back(f[7]);
    corpus.records.push_back(std::move(r));
  }
  corpus.config.noise_types.clear();
  for (const auto &n : noise_seen) corpus.config.noise_types.push_back(ParseNoiseType(n));
  return corpus;
}

}  // namespace uwasr::corpus
