// uwasr/corpus/synth.h

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

#ifndef UWASR_CORPUS_SYNTH_H_
#define UWASR_CORPUS_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "uwasr/decoder/lexicon.h"
#include "uwasr/frontend/frontend.h"

namespace uwasr::corpus {

/// Target Mel-domain power envelope of one HMM state plus its duration range
/// in frames.
struct StateTemplate {
  std::vector<double> envelope;  // n_mel entries, all > 0
  int min_frames = 1;
  int max_frames = 1;

  void Validate(int n_mel) const;  // Throws kInvalidConfig.
};

/// Everything needed to synthesize and decode: the lexicon, the bigram model
/// transcripts are drawn from, and one template per state.
struct Vocabulary {
  decoder::Lexicon lexicon;
  decoder::LanguageModel lm;
  std::vector<StateTemplate> templates;  // indexed by state id
  int silence_word = -1;
};

inline constexpr const char *kSilenceWord = "sil";

struct VocabularyConfig {
  int num_words = 10;
  int min_states = 2;
  int max_states = 4;
  int min_state_frames = 3;
  int max_state_frames = 8;
  int min_silence_frames = 12;
  int max_silence_frames = 16;
  double silence_level_db = -50.0;  // relative to the loudest speech filter
  double word_to_silence = 0.2;     // bigram mass from a word to "sil"
  double lm_scale = 1.0;

  void Validate() const;
};

// Deterministic in (cfg, n_mel, seed). Word names are digits first, then w<i>.
Vocabulary BuildVocabulary(const VocabularyConfig &cfg, int n_mel, std::uint64_t seed);

struct SynthResult {
  AudioSignal audio;
  std::vector<int> alignment;  // state id per analysis frame
};

/// Shaped-noise synthesis: each state's frames carry white noise filtered to
/// that state's envelope, overlap-added with a 20 ms periodic Hann window
/// centred on each analysis frame. The signal has exactly as many frames as
/// the drawn durations sum to, is scaled to `rms` and lies on the 16-bit
/// grid. Throws kUnknownWord.
SynthResult SynthUtterance(const std::vector<std::string> &transcript, const Vocabulary &vocab,
                           const FrontendConfig &cfg, std::uint64_t seed, double rms = 0.05,
                           int sample_rate = 16000);

// Draws "sil w1 .. wn sil" from the bigram model with n in [min, max].
std::vector<std::string> SampleTranscript(const Vocabulary &vocab, int min_words,
                                          int max_words, std::uint64_t seed);

enum class NoiseType { kNone, kWhite, kPink, kBand };
NoiseType ParseNoiseType(const std::string &name);  // Throws kInvalidConfig.
std::string NoiseTypeName(NoiseType type);

struct NoisyPair {
  AudioSignal noisy;
  AudioSignal noise;
};

// Noise of the given colour, unit mean power, same length as the request.
std::vector<double> GenerateNoise(NoiseType type, std::size_t length, int sample_rate,
                                  std::uint64_t seed);

/// Adds noise scaled so that 10 log10(P_clean / P_noise) = snr_db. Both the
/// noise and the mixture sit on the 16-bit grid, so noisy - clean equals the
/// returned noise exactly. snr_db = +inf gives zero noise. Throws kAllSilent
/// and kInvalidConfig.
NoisyPair AddNoise(const AudioSignal &clean, NoiseType type, double snr_db,
                   std::uint64_t seed);

double RealizedSnrDb(const AudioSignal &clean, const AudioSignal &noise);

}  // namespace uwasr::corpus

#endif  // UWASR_CORPUS_SYNTH_H_
