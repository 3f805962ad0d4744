// uwasr/corpus/corpus.h

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

#ifndef UWASR_CORPUS_CORPUS_H_
#define UWASR_CORPUS_CORPUS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "uwasr/corpus/synth.h"
#include "uwasr/frontend/frontend.h"

namespace uwasr::corpus {

enum class TrainingCondition { kClean, kMultiNoise };
TrainingCondition ParseTrainingCondition(const std::string &name);  // "clean", "multi-noise"
std::string TrainingConditionName(TrainingCondition c);

struct CorpusConfig {
  VocabularyConfig vocab;
  int min_words = 3;
  int max_words = 8;
  TrainingCondition condition = TrainingCondition::kMultiNoise;
  std::vector<NoiseType> noise_types{NoiseType::kWhite, NoiseType::kPink, NoiseType::kBand};
  double train_snr_min = 10.0;
  double train_snr_max = 20.0;
  double test_snr_min = 5.0;
  double test_snr_max = 15.0;
  double clean_fraction = 0.25;  // of the multi-noise training split
  int num_train = 100;
  int num_dev = 20;
  int num_test = 20;
  double rms = 0.05;
  std::uint64_t seed = 1;

  void Validate() const;  // Throws kInvalidConfig.
};

struct UtteranceRecord {
  std::string id;
  std::string split;
  std::vector<std::string> words;  // includes the silence words
  std::vector<int> alignment;      // state id per frame
  AudioSignal clean;
  AudioSignal noisy;  // empty unless degraded
  AudioSignal noise;  // empty unless degraded
  NoiseType noise_type = NoiseType::kNone;
  double snr_db = 0.0;  // +inf for clean records

  bool Degraded() const { return noise_type != NoiseType::kNone; }
  const AudioSignal &Observed() const { return Degraded() ? noisy : clean; }
};

/// Splits: "train", "dev", "test-clean" (group A) and one "test-<noise>" per
/// noise type (group B). Every test-<noise> record is the noisy twin of the
/// test-clean record with the same index.
struct Corpus {
  CorpusConfig config;
  Vocabulary vocab;
  std::vector<UtteranceRecord> records;

  std::vector<const UtteranceRecord *> Split(const std::string &name) const;
  std::vector<std::string> SplitNames() const;
  std::vector<std::string> NoisyTestSplits() const;
};

// Words with the silence word removed; what recognition is scored on.
std::vector<std::string> ScoredWords(const std::vector<std::string> &words);

// Deterministic in cfg (utterances are seeded by id and built in parallel).
Corpus BuildCorpus(const CorpusConfig &cfg, const FrontendConfig &fe_cfg);

/// Directory layout: manifest.txt, lexicon.txt, lm.txt, templates.csv,
/// wav/<id>_{clean,noisy,noise}.wav and align/<id>.csv. Throws kIoError.
void WriteCorpus(const Corpus &corpus, const std::string &dir);
Corpus ReadCorpus(const std::string &dir);

}  // namespace uwasr::corpus

#endif  // UWASR_CORPUS_CORPUS_H_
