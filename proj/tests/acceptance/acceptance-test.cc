// tests/acceptance/acceptance-test.cc

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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   acceptance-test [scratch-dir]
//
// Criteria 8 and 9 drive the uwasr binary (path baked in at build time) in
// scratch-dir, which defaults to a fresh directory under the system temp dir.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "decoder-fixtures.h"
#include "uwasr/base/error.h"
#include "uwasr/corpus/corpus.h"
#include "uwasr/decoder/viterbi.h"
#include "uwasr/enhancement/spectral-subtraction.h"
#include "uwasr/experiments/report.h"
#include "uwasr/nnet/mlp-train.h"
#include "uwasr/nnet/nnet-features.h"
#include "uwasr/uncertainty/uncertainty.h"

#ifndef UWASR_CLI_PATH
#error "UWASR_CLI_PATH must name the uwasr executable"
#endif

namespace fs = std::filesystem;
using namespace uwasr;

namespace {

// Tolerances and limits.
constexpr double kExact = 1e-12;
constexpr double kDecodeTol = 1e-9;
constexpr double kGradTol = 1e-4;
constexpr double kLineMse = 1e-3;
constexpr double kSnrTolDb = 0.01;
constexpr int kDecodeTasks = 200;
constexpr double kBruteGuard = 1e7;
constexpr double kLimit1 = 1.0, kLimit2 = 1.0, kLimit3 = 1.0, kLimit4 = 1.0;
constexpr double kLimit5 = 30.0, kLimit6 = 60.0, kLimit7 = 60.0;
constexpr double kLimit89 = 600.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Check(bool ok, const std::string &what) {
    if (!ok) {
      if (pass) detail.clear();
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void Note(const std::string &s) {
    if (pass) detail += (detail.empty() ? "" : "; ") + s;
  }
};

std::string Fmt(const char *f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string Fmt(const char *f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

// ---------------------------------------------------------------------------

Outcome WeightSuite() {
  Outcome o;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> up(0.01, 20.0), u01(0.0, 1.0);
  int below = 0;
  for (int i = 0; i < 1000; ++i) {
    const WeightingParams p{up(rng), up(rng)};
    const double uv = u01(rng) * p.th;
    below += UncertaintyWeight(uv, p) == 1.0;
  }
  o.Check(below == 1000, "UW != 1 below Th");
  double worst_gap = 0.0;
  bool monotone = true;
  for (int i = 0; i < 200; ++i) {
    const WeightingParams p{up(rng), up(rng)};
    worst_gap = std::max(worst_gap, std::abs(UncertaintyWeight(p.th * (1.0 + 1e-14), p) - 1.0));
    double prev = 1.0;
    for (int j = 1; j <= 1000; ++j) {
      const double uv = p.th * (1.0 + 99.0 * j / 1000.0);
      const double w = UncertaintyWeight(uv, p);
      monotone &= w < prev;
      prev = w;
    }
  }
  o.Check(worst_gap <= kExact, Fmt("continuity gap %.3g", worst_gap));
  o.Check(monotone, "not strictly decreasing above Th");
  o.Check(std::abs(UncertaintyWeight(2.0, {1.0, 1.0}) - 0.5) <= kExact, "UW(2;1,1) != 0.5");
  o.Check(std::abs(UncertaintyWeight(10.0, {8.0, 5.0}) - 4.0 / 9.0) <= kExact,
          "UW(10;8,5) != 4/9");
  o.Note(Fmt("continuity gap %.2g", worst_gap));
  return o;
}

Outcome ModelUncertaintySuite() {
  Outcome o;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> uc(0.01, 1.0), ue(1e-4, 1e4), u01(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    ModelUncertaintyConfig cfg;
    cfg.c = uc(rng);
    const double en2 = ue(rng);
    const double d = 10.0 * cfg.c * en2;
    // Just above and just below the switch point select each branch.
    const double hi = ModelUncertainty(en2 + d * (1.0 + 1e-13), en2, cfg);
    const double lo = ModelUncertainty(en2 + d * (1.0 - 1e-13), en2, cfg);
    worst = std::max({worst, std::abs(hi - 0.2), std::abs(lo - 0.2)});
  }
  o.Check(worst <= kExact, Fmt("branch gap %.3g", worst));
  const ModelUncertaintyConfig cfg;
  o.Check(std::abs(ModelUncertainty(2.5, 1.0, cfg) - 0.2) <= kExact, "hand value 0.2");
  o.Check(std::abs(ModelUncertainty(1.5, 1.0, cfg) - 1.0 / 3.0) <= kExact, "hand value 1/3");
  bool in_range = true;
  for (int i = 0; i < 100000; ++i) {
    const double noise = i % 10 == 0 ? 0.0 : ue(rng);
    const double v = ModelUncertainty(ue(rng) * u01(rng), noise, cfg);
    in_range &= v >= 0.0 && v <= 0.4;
  }
  o.Check(in_range, "output outside [0, 0.4]");
  o.Note(Fmt("branch gap %.2g", worst));
  return o;
}

Outcome SpectralSubtractionSuite() {
  Outcome o;
  const SsConfig cfg;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ue(0.0, 1.0);
  constexpr int kFrames = 100000, kMel = 40;
  Matrix fe(kFrames, kMel);
  std::vector<double> en2(kMel);
  for (double &v : en2) v = std::pow(10.0, 4.0 * ue(rng) - 2.0);
  for (int t = 0; t < kFrames; ++t)
    for (int m = 0; m < kMel; ++m) fe(t, m) = std::pow(10.0, 6.0 * ue(rng) - 3.0);
  const Matrix ss = SpectralSubtract(fe, {en2, NoiseSource::kLeadingFrames}, cfg, 1e-10);
  long violations = 0;
  for (int t = 0; t < kFrames; ++t)
    for (int m = 0; m < kMel; ++m)
      violations += !(cfg.beta * fe(t, m) <= ss(t, m) && ss(t, m) <= fe(t, m));
  o.Check(violations == 0, std::to_string(violations) + " floor violations");
  o.Check(OversubtractionFactor(0.0, cfg) == 2.0 && OversubtractionFactor(9.0, cfg) == 1.5 &&
              OversubtractionFactor(18.0, cfg) == 1.0,
          "alpha hand values");
  o.Note(std::to_string(kFrames) + " frames");
  return o;
}

Outcome MseSuite() {
  Outcome o;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<double> x(40);
  for (double &v : x) v = u(rng);
  o.Check(MseUncertainty(x, x) == 0.0, "mse(x, x) != 0");
  o.Check(std::abs(MseUncertainty(std::vector<double>{1, 3}, std::vector<double>{2, 1}) - 2.5) <=
              kExact,
          "hand value 2.5");
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> uv(1 + trial % 60);
    for (double &v : uv) v = std::abs(u(rng)) * 10.0;
    const double c = u(rng) + 5.0;
    std::vector<double> shifted = uv;
    for (double &v : shifted) v += c;
    const auto a = WindowUv(uv, 5), b = WindowUv(shifted, 5);
    for (std::size_t t = 0; t < uv.size(); ++t) worst = std::max(worst, std::abs(b[t] - a[t] - c));
  }
  o.Check(worst <= kExact, Fmt("shift property gap %.3g", worst));
  o.Note(Fmt("shift gap %.2g", worst));
  return o;
}

Outcome DecoderSuite() {
  Outcome o;
  std::mt19937_64 rng(5);
  int compared = 0, skipped = 0, string_mismatch = 0;
  double worst = 0.0;
  while (compared < kDecodeTasks) {
    auto t = testing::RandomTask(rng, 4, 15);
    if (decoder::CountPaths(t.task) > kBruteGuard) {
      ++skipped;
      continue;
    }
    const auto v = decoder::ViterbiDecode(t.task);
    const auto b = decoder::BruteForceDecode(t.task, kBruteGuard);
    string_mismatch += v.words != b.words;
    worst = std::max(worst, std::abs(v.score - b.score));
    ++compared;
  }
  o.Check(string_mismatch == 0, std::to_string(string_mismatch) + " string mismatches");
  o.Check(worst <= kDecodeTol, Fmt("score gap %.3g", worst));

  int identity_fail = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto t = testing::RandomTask(rng, 4, 15);
    t.task.weights.assign(t.task.NumFrames(), 1.0);
    const auto w = decoder::ViterbiDecode(t.task);
    t.task.weights.clear();
    const auto u = decoder::ViterbiDecode(t.task);
    identity_fail += w.words != u.words || w.score != u.score || w.state_path != u.state_path;
  }
  o.Check(identity_fail == 0, std::to_string(identity_fail) + " UW=1 identity failures");

  // LM dominance: acoustics favour "b", the LM strongly prefers "a".
  Matrix ll(6, 2);
  for (int i = 0; i < 6; ++i) {
    ll(i, 0) = -5.0;
    ll(i, 1) = 0.0;
  }
  auto lm = decoder::LanguageModel::FromProbabilities(
      {{0.5, 0.05, 0.45}, {0.3, 0.3, 0.4}, {0.95, 0.05, 0.0}});
  auto t = testing::MakeTask(decoder::Lexicon::FromStateCounts({"a", "b"}, {1, 1}), lm, ll,
                             std::vector<double>(6, 1e-6));
  const auto v = decoder::ViterbiDecode(t.task), b = decoder::BruteForceDecode(t.task);
  o.Check(v.words == b.words && std::abs(v.score - b.score) <= kDecodeTol,
          "LM dominance disagrees with brute force");
  o.Check(v.words == std::vector<std::string>{"a"}, "LM dominance did not pick the LM argmax");
  o.Note(std::to_string(compared) + " tasks (" + std::to_string(skipped) +
         " over guard), score gap " + Fmt("%.2g", worst));
  return o;
}

Outcome NeuralSuite() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> depth(1, 5), width(1, 80), in_dim(1, 42), classes(2, 8);
  double worst[2] = {0.0, 0.0};
  for (int loss = 0; loss < 2; ++loss) {
    for (int n = 0; n < 20; ++n) {
      nnet::MlpSpec spec;
      if (n == 0) {
        spec = nnet::RegressorSpec("C2", 42, 1000 + loss);
      } else {
        spec.layer_sizes = {in_dim(rng)};
        for (int d = depth(rng); d > 0; --d) spec.layer_sizes.push_back(width(rng));
        spec.layer_sizes.push_back(1);
        spec.seed = 1000 + 20 * loss + n;
      }
      std::vector<double> target;
      if (loss == 0) {
        spec.output = nnet::OutputKind::kLinear;
        target = {3.0 * u(rng)};
      } else {
        spec.output = nnet::OutputKind::kSoftmax;
        spec.layer_sizes.back() = classes(rng);
        target.assign(spec.layer_sizes.back(), 0.0);
        target[rng() % target.size()] = 1.0;
      }
      const nnet::MlpModel m = nnet::InitializeMlp(spec);
      std::vector<double> x(spec.InputDim());
      for (double &v : x) v = u(rng);
      const auto r = nnet::GradientCheck(m, x, target,
                                         loss ? nnet::Loss::kCrossEntropy : nnet::Loss::kMse);
      worst[loss] = std::max(worst[loss], r.max_rel_error);
    }
  }
  o.Check(worst[0] < kGradTol, Fmt("MSE gradient error %.3g", worst[0]));
  o.Check(worst[1] < kGradTol, Fmt("xent gradient error %.3g", worst[1]));

  nnet::Dataset line{Matrix(500, 1), Matrix(500, 1)};
  for (int i = 0; i < 500; ++i) {
    line.inputs(i, 0) = u(rng);
    line.targets(i, 0) = 2.0 * line.inputs(i, 0) + 1.0;
  }
  nnet::TrainConfig cfg;
  cfg.epochs = 200;
  cfg.learning_rate = 0.05;
  cfg.batch_size = 8;
  const nnet::MlpSpec spec{{1, 8, 1}, nnet::OutputKind::kLinear, 7};
  const auto a = nnet::Train(spec, line, cfg);
  const double mse = a.curve.back().train;
  o.Check(mse < kLineMse, Fmt("line fit MSE %.3g", mse));
  const auto b = nnet::Train(spec, line, cfg);
  bool same = true;
  for (std::size_t l = 0; l < a.model.layers.size(); ++l)
    same &= a.model.layers[l].weights.Values() == b.model.layers[l].weights.Values() &&
            a.model.layers[l].bias == b.model.layers[l].bias;
  o.Check(same, "retrain differs");
  o.Note(Fmt("grad err %.2g / %.2g", worst[0], worst[1]) + Fmt(", line MSE %.2g", mse));
  return o;
}

Outcome CorpusSuite() {
  Outcome o;
  corpus::CorpusConfig cfg;  // 100 / 20 / 20, multi-noise
  const FrontendConfig fe;
  const corpus::Corpus a = corpus::BuildCorpus(cfg, fe);
  double worst_snr = 0.0;
  long sum_errors = 0;
  int clean = 0, train = 0;
  for (const auto &r : a.records) {
    if (r.split == "train") {
      ++train;
      clean += !r.Degraded();
    }
    if (!r.Degraded()) continue;
    worst_snr = std::max(worst_snr, std::abs(corpus::RealizedSnrDb(r.clean, r.noise) - r.snr_db));
    for (std::size_t n = 0; n < r.clean.samples.size(); ++n)
      sum_errors += r.noisy.samples[n] - r.clean.samples[n] != r.noise.samples[n];
  }
  o.Check(worst_snr <= kSnrTolDb, Fmt("SNR error %.4f dB", worst_snr));
  o.Check(sum_errors == 0, std::to_string(sum_errors) + " samples with noisy - clean != noise");
  o.Check(train == 100 && clean == 25, "train split is " + std::to_string(clean) + " clean of " +
                                           std::to_string(train));
  const corpus::Corpus b = corpus::BuildCorpus(cfg, fe);
  bool same = a.records.size() == b.records.size();
  for (std::size_t i = 0; same && i < a.records.size(); ++i)
    same = a.records[i].id == b.records[i].id &&
           a.records[i].clean.samples == b.records[i].clean.samples &&
           a.records[i].noisy.samples == b.records[i].noisy.samples &&
           a.records[i].alignment == b.records[i].alignment;
  o.Check(same, "rebuild under the same seed differs");
  o.Note(std::to_string(a.records.size()) + " records, worst SNR error " +
         Fmt("%.2g dB", worst_snr));
  return o;
}

// ---------------------------------------------------------------------------

bool Run(const std::string &args, const fs::path &log) {
  const std::string cmd = std::string("\"") + UWASR_CLI_PATH + "\" " + args + " >> \"" +
                          log.string() + "\" 2>&1";
  return std::system(cmd.c_str()) == 0;
}

struct DeskRun {
  bool ok = false;
  std::string failure;
  double seconds8 = 0.0;
};

Outcome OracleGrid(const fs::path &dir, DeskRun *run) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const fs::path log = dir / "acceptance.log";
  const std::string out = "--out \"" + dir.string() + "\"";
  {
    std::ofstream ini(dir / "desk.ini");
    ini << "[corpus]\nnum_train = 100\nnum_dev = 20\nnum_test = 50\n"
        << "test_snr_min = 5\ntest_snr_max = 10\n";
  }
  const bool built = Run("corpus build " + out + " --config \"" + (dir / "desk.ini").string() + "\"", log);
  o.Check(built, "corpus build failed");
  if (built) o.Check(Run("train acoustic " + out + " --condition clean", log), "train acoustic failed");
  if (o.pass) o.Check(Run("grid oracle " + out + " --condition clean", log), "grid oracle failed");
  run->ok = built;
  if (!o.pass) return o;

  const auto cells = experiments::ReadGridCsv((dir / "grid" / "oracle_surface.csv").string());
  std::map<std::string, double> base;
  for (const auto &r : experiments::ReadWerTable((dir / "grid" / "oracle_baseline.csv").string()))
    base[r.test_group] = r.wer;
  const auto corpus = corpus::ReadCorpus((dir / "corpus").string());
  int train = 0, test = 0;
  for (const auto &r : corpus.records) {
    train += r.split == "train";
    test += r.split.rfind("test-", 0) == 0 && r.Degraded();
  }
  o.Check(train >= 100 && test >= 50, "corpus too small");

  std::set<double> wers;
  const experiments::GridCell *best = nullptr;
  for (const auto &c : cells) {
    if (c.group != "B") continue;
    wers.insert(c.wer);
    if (!best || c.wer < best->wer) best = &c;
  }
  o.Check(best != nullptr && base.count("B"), "no group B results");
  if (!o.pass) return o;
  const double b = base["B"];
  o.Check(best->wer <= b, Fmt("argmin WER %.2f > baseline+SS %.2f", best->wer, b));
  o.Check(wers.size() > 1, "surface is constant");
  const double rel = b > 0.0 ? 100.0 * (b - best->wer) / b : 0.0;
  o.Note("group B (" + std::to_string(test) + " noisy test utts): baseline+SS " +
         Fmt("%.2f%%", b) + Fmt(", argmin Th=%g", best->th) + Fmt(" K=%g", best->k) +
         Fmt(" %.2f%%", best->wer) + Fmt(" (%.1f%% relative)", rel) +
         Fmt(", %g distinct WERs", static_cast<double>(wers.size())));
  run->seconds8 = Seconds(start);
  return o;
}

Outcome PipelineHarness(const fs::path &dir, const DeskRun &run) {
  Outcome o;
  if (!run.ok) {
    o.Check(false, "no corpus from criterion 8");
    return o;
  }
  const fs::path log = dir / "acceptance.log";
  const std::string out = "--out \"" + dir.string() + "\"";
  o.Check(Run("grid regressor " + out, log), "grid regressor failed");
  if (!o.pass) return o;
  const auto rows = experiments::ReadRegressorTable((dir / "grid" / "regressor_table.csv").string());
  std::set<std::pair<std::string, std::string>> cells;
  bool nonneg = true;
  for (const auto &r : rows) {
    cells.insert({r.topology, r.feature});
    nonneg &= r.mse >= 0.0 && std::isfinite(r.mse);
  }
  o.Check(rows.size() == 12 && cells.size() == 12, std::to_string(rows.size()) + " regressor cells");
  o.Check(nonneg, "negative or non-finite MSE");

  o.Check(Run("train acoustic " + out + " --condition multi-noise", log),
          "train acoustic (multi-noise) failed");
  if (o.pass) o.Check(Run("train regressor " + out, log), "train regressor failed");
  if (o.pass) o.Check(Run("decode " + out, log), "decode failed");
  if (!o.pass) return o;
  const auto table = experiments::ReadWerTable((dir / "decode" / "wer_table.csv").string());
  std::set<std::string> seen;
  for (const auto &r : table) seen.insert(r.training + "|" + r.test_group + "|" + r.system);
  int missing = 0;
  for (const char *cond : {"clean", "multi-noise"})
    for (const char *group : {"A", "B", "AVG"})
      for (const char *sys :
           {"baseline", "baseline+SS", "UW+UV_model", "UW+UV_DNN", "UW+UV_oracle"})
        missing += !seen.count(std::string(cond) + "|" + group + "|" + sys);
  o.Check(missing == 0 && table.size() == 30, std::to_string(missing) + " missing decode cells");
  o.Note("12 regressor cells, " + std::to_string(table.size()) + " decode cells");
  return o;
}

}  // namespace

int main(int argc, char **argv) {
  fs::path dir = argc > 1 ? fs::path(argv[1])
                          : fs::temp_directory_path() /
                                ("uwasr-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);

  int failures = 0;
  auto report = [&](int id, const char *name, double limit, const std::function<Outcome()> &fn) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception &e) {
      o.Check(false, std::string("exception: ") + e.what());
    }
    const double secs = Seconds(start);
    o.Check(secs < limit, Fmt("runtime %.1f s over %.0f s limit", secs, limit));
    failures += !o.pass;
    std::printf("criterion %d: %s  %s  [%.2f s < %.0f s] %s\n", id, o.pass ? "PASS" : "FAIL", name,
                secs, limit, o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "uncertainty weight", kLimit1, WeightSuite);
  report(2, "model uncertainty", kLimit2, ModelUncertaintySuite);
  report(3, "spectral subtraction", kLimit3, SpectralSubtractionSuite);
  report(4, "MSE uncertainty and window", kLimit4, MseSuite);
  report(5, "decoder oracle equivalence", kLimit5, DecoderSuite);
  report(6, "neural suite", kLimit6, NeuralSuite);
  report(7, "corpus suite", kLimit7, CorpusSuite);

  // 8 and 9 share one corpus; the runtime limit covers both together.
  const auto desk_start = std::chrono::steady_clock::now();
  DeskRun run;
  report(8, "desk-scale oracle grid", kLimit89, [&] { return OracleGrid(dir, &run); });
  report(9, "pipeline harness", kLimit89 - run.seconds8, [&] { return PipelineHarness(dir, run); });
  std::printf("criteria 8+9 combined runtime %.1f s (limit %.0f s); log in %s\n",
              Seconds(desk_start), kLimit89, (dir / "acceptance.log").string().c_str());
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
