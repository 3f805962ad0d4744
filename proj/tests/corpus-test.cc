// tests/corpus-test.cc

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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <set>

#include "test-util.h"
#include "uwasr/base/error.h"
#include "uwasr/corpus/corpus.h"
#include "uwasr/corpus/synth.h"
#include "uwasr/frontend/frontend.h"

namespace uwasr::corpus {
namespace {

Vocabulary OneStateVocabulary(int frames) {
  Vocabulary v;
  v.lexicon = decoder::Lexicon::FromStateCounts({"w"}, {1});
  v.lm = decoder::LanguageModel::FromProbabilities({{0.0, 1.0}, {1.0, 0.0}});
  StateTemplate st;
  st.envelope.assign(40, 1.0);
  st.min_frames = st.max_frames = frames;
  v.templates.push_back(st);
  return v;
}

double MeanPower(const std::vector<double> &x) {
  long double s = 0.0L;
  for (double v : x) s += static_cast<long double>(v) * v;
  return static_cast<double>(s / x.size());
}

TEST(SynthUtterance, OneStateAlignment) {
  const FrontendConfig fe;
  const SynthResult r = SynthUtterance({"w"}, OneStateVocabulary(5), fe, 3);
  EXPECT_EQ(r.alignment, std::vector<int>(5, 0));
  EXPECT_EQ(NumFrames(r.audio.samples.size(), 400, 160), 5);
}

TEST(SynthUtterance, UnknownWordThrows) {
  try {
    SynthUtterance({"w", "nope"}, OneStateVocabulary(5), FrontendConfig{}, 3);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownWord);
  }
}

TEST(SynthUtterance, SameSeedIsBitIdentical) {
  const Vocabulary v = BuildVocabulary(VocabularyConfig{}, 40, 5);
  const auto words = SampleTranscript(v, 3, 8, 9);
  const SynthResult a = SynthUtterance(words, v, FrontendConfig{}, 17);
  const SynthResult b = SynthUtterance(words, v, FrontendConfig{}, 17);
  EXPECT_EQ(a.audio.samples, b.audio.samples);
  EXPECT_EQ(a.alignment, b.alignment);
  EXPECT_NE(SynthUtterance(words, v, FrontendConfig{}, 18).audio.samples, a.audio.samples);
}

TEST(SynthUtterance, AnalyzedEnergiesFollowTheTemplates) {
  // Each state synthesized on its own, so no energy leaks in from neighbours
  // through the overlapping analysis windows.
  const FrontendConfig fe;
  const Vocabulary v = BuildVocabulary(VocabularyConfig{}, fe.n_mel, 5);
  for (std::size_t state = 0; state < v.templates.size(); ++state) {
    Vocabulary one = OneStateVocabulary(30);
    one.templates[0].envelope = v.templates[state].envelope;
    const SynthResult r = SynthUtterance({"w"}, one, fe, 100 + state);
    const Matrix mel = ComputeMelEnergies(r.audio, fe);
    std::vector<double> mean(fe.n_mel, 0.0);
    for (std::size_t t = 0; t < mel.Rows(); ++t)
      for (int m = 0; m < fe.n_mel; ++m) mean[m] += mel(t, m) / mel.Rows();
    const auto &env = v.templates[state].envelope;
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (int m = 0; m < fe.n_mel; ++m) {
      dot += mean[m] * env[m];
      na += mean[m] * mean[m];
      nb += env[m] * env[m];
    }
    EXPECT_GT(dot / std::sqrt(na * nb), 0.9) << "state " << state;
  }
}

TEST(SampleTranscript, SilenceFramedAndInVocabulary) {
  const Vocabulary v = BuildVocabulary(VocabularyConfig{}, 40, 5);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto words = SampleTranscript(v, 3, 8, seed);
    ASSERT_GE(words.size(), 5u);
    EXPECT_EQ(words.front(), kSilenceWord);
    EXPECT_EQ(words.back(), kSilenceWord);
    const auto scored = ScoredWords(words);
    EXPECT_GE(scored.size(), 3u);
    EXPECT_LE(scored.size(), 8u);
    for (const auto &w : words) EXPECT_GE(v.lexicon.WordIndex(w), 0);
  }
}

TEST(BuildVocabulary, ShapeAndValidLm) {
  const Vocabulary v = BuildVocabulary(VocabularyConfig{}, 40, 2);
  EXPECT_EQ(v.lexicon.NumWords(), 11);
  EXPECT_EQ(v.lexicon.words[v.silence_word], kSilenceWord);
  EXPECT_EQ(static_cast<int>(v.templates.size()), v.lexicon.NumStates());
  for (int w = 0; w < v.lexicon.NumWords(); ++w) {
    if (w == v.silence_word) continue;
    EXPECT_GE(v.lexicon.states[w].size(), 2u);
    EXPECT_LE(v.lexicon.states[w].size(), 4u);
  }
  for (const auto &t : v.templates) EXPECT_NO_THROW(t.Validate(40));
  EXPECT_NO_THROW(v.lm.Validate());
}

// On the 16-bit grid, like every corpus signal.
AudioSignal TestTone(std::size_t n) {
  AudioSignal s;
  s.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    s.samples[i] = 0.1 * std::sin(0.01 * i) + 0.02 * std::cos(0.37 * i);
  QuantizeToPcm16(&s.samples);
  return s;
}

TEST(AddNoise, RealizedSnrAndExactSum) {
  const AudioSignal clean = TestTone(32000);
  for (NoiseType type : {NoiseType::kWhite, NoiseType::kPink, NoiseType::kBand}) {
    for (double snr : {0.0, 5.0, 10.0, 20.0}) {
      const NoisyPair p = AddNoise(clean, type, snr, 7);
      EXPECT_NEAR(10.0 * std::log10(MeanPower(clean.samples) / MeanPower(p.noise.samples)), snr,
                  0.01);
      EXPECT_NEAR(RealizedSnrDb(clean, p.noise), snr, 0.01);
      for (std::size_t i = 0; i < clean.samples.size(); ++i)
        ASSERT_EQ(p.noisy.samples[i] - clean.samples[i], p.noise.samples[i]);
    }
  }
}

TEST(AddNoise, InfiniteSnrAndSilence) {
  const AudioSignal clean = TestTone(4000);
  const NoisyPair p = AddNoise(clean, NoiseType::kWhite, INFINITY, 7);
  EXPECT_EQ(p.noisy.samples, clean.samples);
  for (double v : p.noise.samples) EXPECT_EQ(v, 0.0);
  AudioSignal silent;
  silent.samples.assign(4000, 0.0);
  try {
    AddNoise(silent, NoiseType::kWhite, 10.0, 7);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kAllSilent);
  }
}

TEST(GenerateNoise, UnitPowerAndBandLimits) {
  for (NoiseType type : {NoiseType::kWhite, NoiseType::kPink, NoiseType::kBand})
    EXPECT_NEAR(MeanPower(GenerateNoise(type, 20000, 16000, 3)), 1.0, 1e-9);
  EXPECT_EQ(ParseNoiseType("pink"), NoiseType::kPink);
  EXPECT_EQ(NoiseTypeName(NoiseType::kBand), "band");
  EXPECT_THROW(ParseNoiseType("babble"), Error);
}

CorpusConfig SmallConfig() {
  CorpusConfig cfg;
  cfg.num_train = 100;
  cfg.num_dev = 8;
  cfg.num_test = 6;
  cfg.min_words = 2;
  cfg.max_words = 3;
  return cfg;
}

TEST(BuildCorpus, SplitCountsAndCleanFraction) {
  const Corpus c = BuildCorpus(SmallConfig(), FrontendConfig{});
  const auto train = c.Split("train");
  ASSERT_EQ(train.size(), 100u);
  EXPECT_EQ(c.Split("dev").size(), 8u);
  EXPECT_EQ(c.Split("test-clean").size(), 6u);
  for (const auto &name : c.NoisyTestSplits()) EXPECT_EQ(c.Split(name).size(), 6u);
  EXPECT_EQ(c.NoisyTestSplits().size(), 3u);
  int clean = 0;
  for (const auto *r : train) clean += !r->Degraded();
  EXPECT_EQ(clean, 25);
  for (const auto *r : train) {
    if (!r->Degraded()) continue;
    EXPECT_GE(r->snr_db, 10.0);
    EXPECT_LE(r->snr_db, 20.0);
    EXPECT_NEAR(RealizedSnrDb(r->clean, r->noise), r->snr_db, 0.01);
  }
}

TEST(BuildCorpus, CleanConditionHasNoDegradedTraining) {
  CorpusConfig cfg = SmallConfig();
  cfg.num_train = 10;
  cfg.condition = TrainingCondition::kClean;
  const Corpus c = BuildCorpus(cfg, FrontendConfig{});
  for (const auto *r : c.Split("train")) EXPECT_FALSE(r->Degraded());
}

TEST(BuildCorpus, NoisyTestTwinsShareTranscriptAndAlignment) {
  const Corpus c = BuildCorpus(SmallConfig(), FrontendConfig{});
  const auto clean = c.Split("test-clean");
  for (const auto &name : c.NoisyTestSplits()) {
    const auto noisy = c.Split(name);
    ASSERT_EQ(noisy.size(), clean.size());
    for (std::size_t i = 0; i < clean.size(); ++i) {
      EXPECT_EQ(noisy[i]->words, clean[i]->words);
      EXPECT_EQ(noisy[i]->alignment, clean[i]->alignment);
      EXPECT_EQ(noisy[i]->clean.samples, clean[i]->clean.samples);
      EXPECT_GE(noisy[i]->snr_db, 5.0);
      EXPECT_LE(noisy[i]->snr_db, 15.0);
      for (std::size_t n = 0; n < noisy[i]->clean.samples.size(); ++n)
        ASSERT_EQ(noisy[i]->noisy.samples[n] - noisy[i]->clean.samples[n],
                  noisy[i]->noise.samples[n]);
    }
  }
}

TEST(BuildCorpus, AlignmentMatchesFrameCount) {
  const FrontendConfig fe;
  const Corpus c = BuildCorpus(SmallConfig(), fe);
  for (const auto &r : c.records)
    EXPECT_EQ(static_cast<int>(r.alignment.size()),
              NumFrames(r.clean.samples.size(), fe.FrameLength(16000), fe.FrameShift(16000)));
}

TEST(BuildCorpus, DeterministicUnderSeed) {
  CorpusConfig cfg = SmallConfig();
  cfg.num_train = 12;
  const Corpus a = BuildCorpus(cfg, FrontendConfig{}), b = BuildCorpus(cfg, FrontendConfig{});
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].id, b.records[i].id);
    EXPECT_EQ(a.records[i].noisy.samples, b.records[i].noisy.samples);
    EXPECT_EQ(a.records[i].clean.samples, b.records[i].clean.samples);
  }
  cfg.seed = 2;
  EXPECT_NE(BuildCorpus(cfg, FrontendConfig{}).records[0].clean.samples,
            a.records[0].clean.samples);
}

TEST(Corpus, WriteReadRoundTrip) {
  testing::TempDir dir("corpus");
  CorpusConfig cfg = SmallConfig();
  cfg.num_train = 8;
  const Corpus a = BuildCorpus(cfg, FrontendConfig{});
  WriteCorpus(a, dir.Path());
  const Corpus b = ReadCorpus(dir.Path());
  ASSERT_EQ(b.records.size(), a.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto &x = a.records[i], &y = b.records[i];
    EXPECT_EQ(y.id, x.id);
    EXPECT_EQ(y.split, x.split);
    EXPECT_EQ(y.words, x.words);
    EXPECT_EQ(y.alignment, x.alignment);
    EXPECT_EQ(y.clean.samples, x.clean.samples);
    EXPECT_EQ(y.noisy.samples, x.noisy.samples);
    EXPECT_EQ(y.noise_type, x.noise_type);
    EXPECT_EQ(y.snr_db, x.snr_db);
  }
  EXPECT_EQ(b.vocab.lexicon.words, a.vocab.lexicon.words);
  EXPECT_EQ(b.vocab.templates[3].envelope, a.vocab.templates[3].envelope);
  try {
    ReadCorpus(dir.Path("nowhere"));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingDependency);
  }
}

TEST(TrainingCondition, Names) {
  EXPECT_EQ(ParseTrainingCondition("multi-noise"), TrainingCondition::kMultiNoise);
  EXPECT_EQ(TrainingConditionName(TrainingCondition::kClean), "clean");
  EXPECT_THROW(ParseTrainingCondition("multi-condition"), Error);
}

}  // namespace
}  // namespace uwasr::corpus
