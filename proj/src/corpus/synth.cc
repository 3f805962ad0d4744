// src/corpus/synth.cc

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

#include "uwasr/corpus/synth.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "uwasr/base/error.h"
#include "uwasr/base/rng.h"

namespace uwasr::corpus {

namespace {

const char *const kDigitNames[] = {"zero", "one", "two",   "three", "four",
                                   "five", "six", "seven", "eight", "nine"};

// Largest boost applied when undoing the analysis pre-emphasis (20 dB).

int UniformInt(Rng &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double Uniform(Rng &rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<double> RandomEnvelopeDb(Rng &rng, int n_mel) {
  std::vector<double> db(n_mel);
  const double tilt = Uniform(rng, -12.0, 4.0);
  const int bumps = UniformInt(rng, 2, 3);
  std::vector<double> centers(bumps), widths(bumps), heights(bumps);
  for (int b = 0; b < bumps; ++b) {
    centers[b] = Uniform(rng, 0.0, n_mel - 1.0);
    widths[b] = Uniform(rng, 1.5, 5.0);
    heights[b] = Uniform(rng, 10.0, 25.0);
  }
  for (int m = 0; m < n_mel; ++m) {
    double v = tilt * m / std::max(1, n_mel - 1);
    for (int b = 0; b < bumps; ++b) {
      const double z = (m - centers[b]) / widths[b];
      v += heights[b] * std::exp(-0.5 * z * z);
    }
    db[m] = v;
  }
  return db;
}

std::size_t SampleIndex(Rng &rng, const std::vector<double> &probs) {
  const double u = Uniform(rng, 0.0, 1.0);
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    last = i;
    if (u < acc) return i;
  }
  return last;
}

void NormalizePower(std::vector<double> *x) {
  double p = 0.0;
  for (double v : *x) p += v * v;
  p /= static_cast<double>(x->size());
  if (p <= 0.0) Fail(ErrorCode::kAllSilent, "generated noise has zero power");
  const double g = 1.0 / std::sqrt(p);
  for (double &v : *x) v *= g;
}

}  // namespace

void StateTemplate::Validate(int n_mel) const {
  Require(static_cast<int>(envelope.size()) == n_mel, ErrorCode::kInvalidConfig,
          "template envelope size differs from the filter count");
  for (double v : envelope)
    Require(v > 0.0 && std::isfinite(v), ErrorCode::kInvalidConfig,
            "template envelope entries must be positive");
  Require(min_frames >= 1 && max_frames >= min_frames, ErrorCode::kInvalidConfig,
          "bad template duration range");
}

void VocabularyConfig::Validate() const {
  Require(num_words >= 1, ErrorCode::kInvalidConfig, "num_words must be >= 1");
  Require(min_states >= 1 && max_states >= min_states, ErrorCode::kInvalidConfig,
          "bad states-per-word range");
  Require(min_state_frames >= 1 && max_state_frames >= min_state_frames,
          ErrorCode::kInvalidConfig, "bad state duration range");
  Require(min_silence_frames >= 1 && max_silence_frames >= min_silence_frames,
          ErrorCode::kInvalidConfig, "bad silence duration range");
  Require(word_to_silence > 0.0 && word_to_silence < 1.0, ErrorCode::kInvalidConfig,
          "word_to_silence must be in (0, 1)");
  Require(lm_scale > 0.0, ErrorCode::kInvalidConfig, "lm_scale must be > 0");
}

Vocabulary BuildVocabulary(const VocabularyConfig &cfg, int n_mel, std::uint64_t seed) {
  cfg.Validate();
  Require(n_mel >= 1, ErrorCode::kInvalidConfig, "n_mel must be >= 1");
  Rng rng(SplitMix64(seed));
  const int v = cfg.num_words;

  std::vector<std::string> names;
  std::vector<int> counts;
  for (int w = 0; w < v; ++w) {
    names.push_back(w < 10 ? kDigitNames[w] : "w" + std::to_string(w));
    counts.push_back(UniformInt(rng, cfg.min_states, cfg.max_states));
  }
  names.push_back(kSilenceWord);
  counts.push_back(1);

  Vocabulary vocab;
  vocab.lexicon = decoder::Lexicon::FromStateCounts(names, counts);
  vocab.silence_word = v;

  const int num_states = vocab.lexicon.NumStates();
  std::vector<std::vector<double>> db(num_states);
  double peak = -1e300;
  for (int s = 0; s + 1 < num_states; ++s) {
    db[s] = RandomEnvelopeDb(rng, n_mel);
    peak = std::max(peak, *std::max_element(db[s].begin(), db[s].end()));
  }
  if (num_states == 1) peak = 0.0;
  db[num_states - 1].assign(n_mel, peak + cfg.silence_level_db);
  vocab.templates.resize(num_states);
  for (int s = 0; s < num_states; ++s) {
    StateTemplate &t = vocab.templates[s];
    for (double d : db[s]) t.envelope.push_back(std::pow(10.0, (d - peak) / 10.0));
    const bool silence = s == num_states - 1;
    t.min_frames = silence ? cfg.min_silence_frames : cfg.min_state_frames;
    t.max_frames = silence ? cfg.max_silence_frames : cfg.max_state_frames;
  }

  // Rows: words 0..v-1, sil = v, <s> = v+1. Columns: words, sil, </s>.
  const int total = v + 1;
  std::vector<std::vector<double>> probs(total + 1, std::vector<double>(total + 1, 0.0));
  probs[total][v] = 1.0;
  std::vector<double> unigram(v);
  double usum = 0.0;
  for (int w = 0; w < v; ++w) usum += unigram[w] = Uniform(rng, 0.5, 1.5);
  for (int w = 0; w < v; ++w) probs[v][w] = 0.5 * unigram[w] / usum;
  probs[v][total] = 0.5;
  for (int p = 0; p < v; ++p) {
    std::vector<double> row(v);
    double sum = 0.0;
    for (int w = 0; w < v; ++w) sum += row[w] = std::pow(Uniform(rng, 0.0, 1.0), 3.0) + 1e-3;
    for (int w = 0; w < v; ++w) probs[p][w] = (1.0 - cfg.word_to_silence) * row[w] / sum;
    probs[p][v] = cfg.word_to_silence;
  }
  vocab.lm = decoder::LanguageModel::FromProbabilities(probs, cfg.lm_scale);
  return vocab;
}

std::vector<std::string> SampleTranscript(const Vocabulary &vocab, int min_words,
                                          int max_words, std::uint64_t seed) {
  Require(min_words >= 1 && max_words >= min_words, ErrorCode::kInvalidConfig,
          "bad transcript length range");
  const auto &lm = vocab.lm;
  const int v = lm.NumWords();
  const int sil = vocab.silence_word;
  Require(sil >= 0, ErrorCode::kInvalidConfig, "vocabulary has no silence word");
  Rng rng(SplitMix64(seed));
  std::vector<double> row(v + 1);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<int> seq{sil};
    int cur = sil;
    bool ok = false;
    while (static_cast<int>(seq.size()) <= max_words + 1) {
      for (int n = 0; n <= v; ++n) row[n] = std::exp(lm.LogProb(cur, n));
      const int next = static_cast<int>(SampleIndex(rng, row));
      if (cur == sil && seq.size() > 1) {
        ok = next == v;
        break;
      }
      if (next == v || (next == sil && seq.size() == 1)) break;
      seq.push_back(next);
      cur = next;
    }
    const int words = static_cast<int>(seq.size()) - 2;
    if (!ok || words < min_words || words > max_words) continue;
    std::vector<std::string> out;
    for (int w : seq) out.push_back(vocab.lexicon.words[w]);
    return out;
  }
  Fail(ErrorCode::kInvalidConfig, "language model cannot produce the requested lengths");
}

SynthResult SynthUtterance(const std::vector<std::string> &transcript, const Vocabulary &vocab,
                           const FrontendConfig &cfg, std::uint64_t seed, double rms,
                           int sample_rate) {
  cfg.Validate(sample_rate);
  Require(!transcript.empty(), ErrorCode::kEmptyInput, "empty transcript");
  Require(rms > 0.0 && rms < 0.5, ErrorCode::kInvalidConfig, "rms must be in (0, 0.5)");
  Rng rng(SplitMix64(seed));

  SynthResult result;
  for (const auto &word : transcript) {
    const int w = vocab.lexicon.WordIndex(word);
    if (w < 0) Fail(ErrorCode::kUnknownWord, "word not in lexicon: " + word);
    for (int s : vocab.lexicon.states[w]) {
      const StateTemplate &t = vocab.templates.at(s);
      const int d = UniformInt(rng, t.min_frames, t.max_frames);
      result.alignment.insert(result.alignment.end(), d, s);
    }
  }

  const int frame_len = cfg.FrameLength(sample_rate);
  const int shift = cfg.FrameShift(sample_rate);
  const int grain = 2 * shift;
  const MelFilterbank fb(cfg, sample_rate);
  const int n_fft = fb.FftSize(), bins = fb.NumBins(), n_mel = fb.NumFilters();
  Require(grain <= n_fft, ErrorCode::kInvalidConfig, "fft too small for synthesis");

  // Filter m sums its weights over the bins it covers; divide that out so the
  // analysed energy lands on the envelope value.
  std::vector<double> log_area(n_mel);
  for (int m = 0; m < n_mel; ++m) {
    double a = 0.0;
    for (double w : fb.Weights().Row(m)) a += w;
    log_area[m] = std::log(a);
  }

  // Per-bin position between filter centres; bins outside the filterbank
  // range stay silent.
  std::vector<int> lo(bins);
  std::vector<double> frac(bins), in_band(bins, 0.0);
  for (int k = 0; k < bins; ++k) {
    const double f = fb.BinFrequency(k);
    int m = 0;
    while (m + 1 < n_mel && fb.CenterFrequency(m + 1) <= f) ++m;
    lo[k] = m;
    if (f <= fb.CenterFrequency(0)) {
      frac[k] = 0.0;
    } else if (m + 1 >= n_mel) {
      frac[k] = 0.0;
    } else {
      frac[k] = (f - fb.CenterFrequency(m)) /
                (fb.CenterFrequency(m + 1) - fb.CenterFrequency(m));
    }
    if (f >= cfg.mel_fmin && f <= cfg.mel_fmax) in_band[k] = 1.0;
  }

  std::vector<double> window(grain);
  for (int n = 0; n < grain; ++n)
    window[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / grain);

  const std::size_t num_frames = result.alignment.size();
  std::vector<double> &out = result.audio.samples;
  out.assign((num_frames - 1) * shift + frame_len, 0.0);
  result.audio.sample_rate = sample_rate;

  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::complex<double>> spec(bins);
  std::vector<double> time(n_fft), gain(bins);
  const int offset = frame_len / 2 - grain / 2;
  RealFft ifft(n_fft);
  for (std::size_t t = 0; t < num_frames; ++t) {
    const auto &env = vocab.templates[result.alignment[t]].envelope;
    for (int k = 0; k < bins; ++k) {
      const int m = lo[k];
      const double a = std::log(env[m]) - log_area[m];
      const double b = m + 1 < n_mel ? std::log(env[m + 1]) - log_area[m + 1] : a;
      gain[k] = std::exp(a + frac[k] * (b - a)) * in_band[k];
    }
    for (int k = 0; k < bins; ++k) {
      const double re = normal(rng), im = normal(rng);
      const double g = std::sqrt(gain[k] / 2.0);
      spec[k] = {re * g, (k == 0 || 2 * k == n_fft) ? 0.0 : im * g};
    }
    ifft.Inverse(spec, time);
    const std::size_t base = t * shift + offset;
    for (int n = 0; n < grain; ++n) out[base + n] += window[n] * time[n];
  }
  // Undo the analysis pre-emphasis with its IIR inverse over the whole signal,
  // so the grains themselves only carry the smooth envelope.
  for (std::size_t n = 1; n < out.size(); ++n) out[n] += cfg.preemphasis * out[n - 1];

  double power = 0.0;
  for (double x : out) power += x * x;
  power /= static_cast<double>(out.size());
  if (power <= 0.0) Fail(ErrorCode::kAllSilent, "synthesized signal is silent");
  const double g = rms / std::sqrt(power);
  for (double &x : out) x *= g;
  QuantizeToPcm16(&out);
  return result;
}

NoiseType ParseNoiseType(const std::string &name) {
  if (name == "none") return NoiseType::kNone;
  if (name == "white") return NoiseType::kWhite;
  if (name == "pink") return NoiseType::kPink;
  if (name == "band") return NoiseType::kBand;
  Fail(ErrorCode::kInvalidConfig, "unknown noise type: " + name);
}

std::string NoiseTypeName(NoiseType type) {
  switch (type) {
    case NoiseType::kNone: return "none";
    case NoiseType::kWhite: return "white";
    case NoiseType::kPink: return "pink";
    case NoiseType::kBand: return "band";
  }
  return "none";
}

std::vector<double> GenerateNoise(NoiseType type, std::size_t length, int sample_rate,
                                  std::uint64_t seed) {
  Require(length > 0, ErrorCode::kEmptyInput, "noise length must be > 0");
  Require(type != NoiseType::kNone, ErrorCode::kInvalidConfig, "no noise type given");
  Rng rng(SplitMix64(seed));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(length);
  if (type == NoiseType::kWhite) {
    for (double &v : x) v = normal(rng);
    NormalizePower(&x);
    return x;
  }
  int n = 2;
  while (static_cast<std::size_t>(n) < length) n *= 2;
  RealFft fft(n);
  std::vector<std::complex<double>> spec(fft.NumBins());
  for (int k = 1; k < fft.NumBins(); ++k) {
    const double f = static_cast<double>(k) * sample_rate / n;
    double g = 0.0;
    if (type == NoiseType::kPink) {
      g = 1.0 / std::sqrt(f);
    } else if (f >= 300.0 && f <= 3000.0) {
      g = 1.0;
    }
    const double re = normal(rng), im = normal(rng);
    spec[k] = {g * re, 2 * k == n ? 0.0 : g * im};
  }
  std::vector<double> time(n);
  fft.Inverse(spec, time);
  std::copy(time.begin(), time.begin() + length, x.begin());
  NormalizePower(&x);
  return x;
}

NoisyPair AddNoise(const AudioSignal &clean, NoiseType type, double snr_db,
                   std::uint64_t seed) {
  Require(!std::isnan(snr_db) && snr_db != -std::numeric_limits<double>::infinity(),
          ErrorCode::kInvalidConfig, "snr must be finite or +inf");
  const double p_clean = clean.MeanPower();
  if (clean.samples.empty() || p_clean <= 0.0)
    Fail(ErrorCode::kAllSilent, "cannot set an SNR against a silent signal");
  NoisyPair pair;
  pair.noise.sample_rate = pair.noisy.sample_rate = clean.sample_rate;
  if (std::isinf(snr_db) || type == NoiseType::kNone) {
    pair.noisy = clean;
    pair.noise.samples.assign(clean.samples.size(), 0.0);
    return pair;
  }
  pair.noise.samples = GenerateNoise(type, clean.samples.size(), clean.sample_rate, seed);
  const double g = std::sqrt(p_clean / std::pow(10.0, snr_db / 10.0));
  for (double &v : pair.noise.samples) v *= g;
  QuantizeToPcm16(&pair.noise.samples);
  pair.noisy.samples.resize(clean.samples.size());
  for (std::size_t i = 0; i < clean.samples.size(); ++i) {
    const double y = clean.samples[i] + pair.noise.samples[i];
    Require(std::abs(y) <= 32767.0 / 32768.0, ErrorCode::kInvalidConfig,
            "noisy mixture clips; lower the level or raise the SNR");
    pair.noisy.samples[i] = y;
  }
  return pair;
}

double RealizedSnrDb(const AudioSignal &clean, const AudioSignal &noise) {
  return 10.0 * std::log10(clean.MeanPower() / noise.MeanPower());
}

}  // namespace uwasr::corpus
