// src/experiments/pipeline.cc

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

#include "uwasr/experiments/pipeline.h"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "uwasr/base/error.h"
#include "uwasr/base/rng.h"
#include "uwasr/decoder/viterbi.h"
#include "uwasr/decoder/wer.h"
#include "uwasr/enhancement/spectral-subtraction.h"
#include "uwasr/nnet/mlp-io.h"

namespace uwasr::experiments {

namespace fs = std::filesystem;
using corpus::TrainingCondition;

namespace {

// Runs body(i) for i in [0, n) in parallel; the first exception is rethrown.
template <typename F>
void ParallelFor(std::size_t n, F body) {
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(uwasr_pipeline_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

const AcousticModel &RequireModel(const std::optional<AcousticModel> &m, const std::string &what) {
  if (!m) Fail(ErrorCode::kMissingDependency, "no " + what + " acoustic model loaded");
  return *m;
}

std::vector<ResultRow> GroupRows(const std::string &training, const std::string &system,
                                 const std::vector<PreparedUtterance> &test,
                                 const std::vector<decoder::WerResult> &wers) {
  std::vector<ResultRow> rows;
  for (const auto &group : TestGroups()) {
    std::vector<decoder::WerResult> members;
    for (std::size_t i = 0; i < test.size(); ++i)
      if (InGroup(test[i].split, group)) members.push_back(wers[i]);
    if (members.empty()) continue;
    rows.push_back({training, group, system, decoder::PooledWer(members)});
  }
  return rows;
}

}  // namespace

PreparedUtterance PrepareUtterance(const corpus::UtteranceRecord &record,
                                   const ExperimentConfig &cfg, bool observe_clean) {
  const FrontendConfig &fe = cfg.frontend;
  const bool noisy = record.Degraded() && !observe_clean;
  PreparedUtterance u;
  u.id = record.id;
  u.split = record.split;
  u.reference = corpus::ScoredWords(record.words);
  u.alignment = record.alignment;

  const Matrix clean_mel = ComputeMelEnergies(record.clean, fe);
  const Matrix observed_mel = noisy ? ComputeMelEnergies(record.noisy, fe) : clean_mel;
  Require(observed_mel.Rows() == u.alignment.size(), ErrorCode::kDimMismatch,
          "alignment length differs from the frame count of " + record.id);

  NoiseEstimate noise;
  if (cfg.oracle_noise) {
    noise = noisy ? EstimateNoiseOracle(ComputeMelEnergies(record.noise, fe))
                  : NoiseEstimate{std::vector<double>(observed_mel.Cols(), 0.0), NoiseSource::kOracle};
  } else {
    noise = EstimateNoise(observed_mel, cfg.noise_frames);
  }

  const Matrix enhanced_mel = SpectralSubtract(observed_mel, noise, cfg.ss, fe.energy_floor);
  u.raw = ComputeFeatures(observed_mel, fe);
  u.enhanced = ComputeFeatures(enhanced_mel, fe);
  u.clean_statics = LogFeatures(clean_mel, fe.energy_floor);

  const Matrix variances = ModelUncertainty(observed_mel, noise, cfg.model_uv);
  u.model_uv.resize(variances.Rows());
  for (std::size_t t = 0; t < variances.Rows(); ++t) u.model_uv[t] = ModelUvScalar(variances.Row(t));
  u.oracle_uv = MseUncertainty(u.clean_statics, u.enhanced.statics);
  return u;
}

std::vector<PreparedUtterance> PrepareRecords(
    const std::vector<const corpus::UtteranceRecord *> &records, const ExperimentConfig &cfg,
    bool observe_clean) {
  std::vector<PreparedUtterance> out(records.size());
  ParallelFor(records.size(),
              [&](std::size_t i) { out[i] = PrepareUtterance(*records[i], cfg, observe_clean); });
  return out;
}

std::vector<PreparedUtterance> PrepareTraining(const corpus::Corpus &corpus,
                                               TrainingCondition condition,
                                               const ExperimentConfig &cfg) {
  const auto records = corpus.Split("train");
  if (records.empty()) Fail(ErrorCode::kEmptyDataset, "corpus has no training split");
  return PrepareRecords(records, cfg, condition == TrainingCondition::kClean);
}

std::vector<PreparedUtterance> PrepareTest(const corpus::Corpus &corpus,
                                           const ExperimentConfig &cfg) {
  std::vector<const corpus::UtteranceRecord *> records = corpus.Split("test-clean");
  for (const auto &split : corpus.NoisyTestSplits())
    for (const auto *r : corpus.Split(split)) records.push_back(r);
  if (records.empty()) Fail(ErrorCode::kEmptyDataset, "corpus has no test splits");
  return PrepareRecords(records, cfg);
}

std::string AcousticModelName(TrainingCondition condition, bool enhanced) {
  return "acoustic_" + corpus::TrainingConditionName(condition) + (enhanced ? "_ss" : "_raw");
}

nnet::Dataset AcousticDataset(const std::vector<PreparedUtterance> &utts, bool enhanced,
                              int context, int num_states) {
  std::size_t rows = 0;
  for (const auto &u : utts) rows += u.NumFrames();
  if (rows == 0) Fail(ErrorCode::kEmptyDataset, "no acoustic training frames");
  const std::size_t n_mel = utts.front().raw.NumMel();
  nnet::Dataset data;
  data.inputs.Resize(rows, (2 * context + 1) * 3 * n_mel);
  data.targets.Resize(rows, num_states);
  std::vector<std::size_t> offset(utts.size(), 0);
  for (std::size_t i = 1; i < utts.size(); ++i) offset[i] = offset[i - 1] + utts[i - 1].NumFrames();
  ParallelFor(utts.size(), [&](std::size_t i) {
    const Matrix windows = nnet::ContextWindows(enhanced ? utts[i].enhanced : utts[i].raw, context);
    for (std::size_t t = 0; t < windows.Rows(); ++t) {
      data.inputs.SetRow(offset[i] + t, windows.Row(t));
      const int s = utts[i].alignment[t];
      Require(s >= 0 && s < num_states, ErrorCode::kDimMismatch, "alignment state out of range");
      data.targets(offset[i] + t, s) = 1.0;
    }
  });
  return data;
}

AcousticModel TrainAcoustic(const ExperimentConfig &cfg, const std::vector<PreparedUtterance> &train,
                            bool enhanced, int num_states, std::vector<nnet::EpochLoss> *curve) {
  const nnet::Dataset data = AcousticDataset(train, enhanced, cfg.acoustic.context, num_states);
  nnet::MlpSpec spec;
  spec.layer_sizes.push_back(static_cast<int>(data.inputs.Cols()));
  for (int h : cfg.acoustic.hidden) spec.layer_sizes.push_back(h);
  spec.layer_sizes.push_back(num_states);
  spec.output = nnet::OutputKind::kSoftmax;
  spec.seed = cfg.acoustic.seed;
  nnet::TrainConfig tc = cfg.acoustic.train;
  tc.loss = nnet::Loss::kCrossEntropy;
  tc.standardize_targets = false;
  nnet::TrainResult result = nnet::Train(spec, data, tc);
  if (curve) *curve = result.curve;
  std::vector<std::vector<int>> alignments;
  for (const auto &u : train) alignments.push_back(u.alignment);
  return {std::move(result.model), nnet::StatePriors(alignments, num_states)};
}

Matrix AcousticLogLikelihoods(const AcousticModel &model, const Features &features, int context) {
  return decoder::PseudoLogLikelihoods(nnet::AcousticLogPosteriors(model.mlp, features, context),
                                       model.priors);
}

void WriteAcousticModel(const std::string &dir, const std::string &name, const AcousticModel &m) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  nnet::WriteMlpFile((fs::path(dir) / (name + ".mlp")).string(), m.mlp);
  const std::string path = (fs::path(dir) / (name + ".priors")).string();
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kIoError, "cannot write " + path);
  for (double p : m.priors) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g\n", p);
    out << buf;
  }
  out.close();
  if (!out) Fail(ErrorCode::kIoError, "write failed for " + path);
}

AcousticModel ReadAcousticModel(const std::string &dir, const std::string &name) {
  AcousticModel m;
  m.mlp = nnet::ReadMlpFile((fs::path(dir) / (name + ".mlp")).string());
  const fs::path path = fs::path(dir) / (name + ".priors");
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kMissingDependency, "missing state priors: " + path.string());
  for (double p; in >> p;) m.priors.push_back(p);
  Require(static_cast<int>(m.priors.size()) == m.mlp.spec.OutputDim(), ErrorCode::kFormatError,
          "prior count differs from the model's output size");
  return m;
}

Matrix RegressorInputs(const PreparedUtterance &utt, nnet::FeatureVariant variant) {
  const int dim = nnet::AssembledDim(variant, static_cast<int>(utt.raw.NumMel()));
  Matrix out(utt.NumFrames(), dim);
  for (std::size_t t = 0; t < utt.NumFrames(); ++t) {
    nnet::FrameInputs in;
    in.noisy_static = utt.raw.statics.Row(t);
    in.enhanced_static = utt.enhanced.statics.Row(t);
    in.log_norm_energy = utt.raw.log_norm_energy[t];
    in.model_uv = utt.model_uv[t];
    out.SetRow(t, nnet::AssembleInput(variant, in));
  }
  return out;
}

nnet::Dataset RegressorDataset(const std::vector<PreparedUtterance> &utts,
                               nnet::FeatureVariant variant, int max_frames, std::uint64_t seed) {
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t i = 0; i < utts.size(); ++i)
    for (std::size_t t = 0; t < utts[i].NumFrames(); ++t) frames.emplace_back(i, t);
  if (frames.empty()) Fail(ErrorCode::kEmptyDataset, "no regressor training frames");
  if (frames.size() > static_cast<std::size_t>(max_frames)) {
    Rng rng(SplitMix64(seed));
    std::shuffle(frames.begin(), frames.end(), rng);
    frames.resize(max_frames);
    std::sort(frames.begin(), frames.end());
  }
  std::vector<Matrix> inputs(utts.size());
  ParallelFor(utts.size(), [&](std::size_t i) { inputs[i] = RegressorInputs(utts[i], variant); });
  nnet::Dataset data;
  data.inputs.Resize(frames.size(), inputs.front().Cols());
  data.targets.Resize(frames.size(), 1);
  for (std::size_t r = 0; r < frames.size(); ++r) {
    const auto [i, t] = frames[r];
    data.inputs.SetRow(r, inputs[i].Row(t));
    data.targets(r, 0) = utts[i].oracle_uv[t];
  }
  return data;
}

std::vector<double> PredictUv(const nnet::MlpModel &model, const PreparedUtterance &utt,
                              nnet::FeatureVariant variant) {
  const Matrix out = nnet::ForwardBatch(model, RegressorInputs(utt, variant));
  std::vector<double> uv(out.Rows());
  for (std::size_t t = 0; t < out.Rows(); ++t) uv[t] = std::max(out(t, 0), 0.0);
  return uv;
}

std::string RegressorModelName(const std::string &topology, const std::string &feature) {
  return "regressor_" + topology + "_" + feature;
}

RegressorCell TrainRegressor(const ExperimentConfig &cfg, const std::vector<PreparedUtterance> &train,
                             const std::string &topology, const std::string &feature) {
  const nnet::FeatureVariant variant = nnet::ParseFeatureVariant(feature);
  const nnet::Dataset data = RegressorDataset(train, variant, cfg.regressor.max_frames,
                                              DeriveSeed(cfg.regressor.seed, "frames"));
  const nnet::MlpSpec spec =
      nnet::RegressorSpec(topology, static_cast<int>(data.inputs.Cols()),
                          DeriveSeed(cfg.regressor.seed, topology + "/" + feature));
  nnet::TrainConfig tc = cfg.regressor.train;
  tc.loss = nnet::Loss::kMse;
  RegressorCell cell{topology, feature, 0.0, nnet::Train(spec, data, tc)};
  cell.test_mse = cell.result.model.info.test_loss;
  return cell;
}

std::vector<RegressorCell> RunRegressorGrid(const ExperimentConfig &cfg,
                                            const std::vector<PreparedUtterance> &train) {
  std::vector<RegressorCell> cells;
  for (const auto &topology : cfg.regressor.topologies)
    for (const auto &feature : cfg.regressor.features)
      cells.push_back(TrainRegressor(cfg, train, topology, feature));
  return cells;
}

WeightingParams SystemWeighting(System system, const ExperimentConfig &cfg) {
  switch (system) {
    case System::kUwModel: return cfg.weight_model;
    case System::kUwDnn: return cfg.weight_dnn;
    case System::kUwOracle: return cfg.weight_oracle;
    default: return {};
  }
}

std::vector<double> SystemUv(System system, const PreparedUtterance &utt,
                             const nnet::MlpModel *regressor, const ExperimentConfig &cfg) {
  switch (system) {
    case System::kUwModel: return utt.model_uv;
    case System::kUwOracle: return utt.oracle_uv;
    case System::kUwDnn:
      if (!regressor) Fail(ErrorCode::kMissingDependency, "UW+UV_DNN needs a trained regressor");
      return PredictUv(*regressor, utt, nnet::ParseFeatureVariant(cfg.regressor.feature));
    default: return {};
  }
}

decoder::DecodeRecord DecodeUtterance(const PreparedUtterance &utt, const Matrix &loglik,
                                      const std::vector<double> &weights,
                                      const corpus::Vocabulary &vocab, double lm_scale) {
  decoder::LanguageModel lm = vocab.lm;
  lm.SetScale(lm_scale);
  decoder::DecodeTask task;
  task.loglik = loglik;
  task.weights = weights;
  task.lexicon = &vocab.lexicon;
  task.lm = &lm;
  const decoder::Hypothesis hyp = decoder::ViterbiDecode(task);
  const std::vector<std::string> scored = corpus::ScoredWords(hyp.words);
  decoder::DecodeRecord rec;
  rec.utt_id = utt.id;
  rec.reference = decoder::JoinWords(utt.reference);
  rec.hypothesis = decoder::JoinWords(scored);
  rec.score = hyp.score;
  rec.wer = decoder::ComputeWer(utt.reference, scored);
  return rec;
}

bool InGroup(const std::string &split, const std::string &group) {
  if (group == "AVG") return split.rfind("test-", 0) == 0;
  if (group == "A") return split == "test-clean";
  if (group == "B") return split.rfind("test-", 0) == 0 && split != "test-clean";
  return false;
}

SystemRun RunSystem(const ExperimentConfig &cfg, System system, TrainingCondition condition,
                    const std::vector<PreparedUtterance> &test, const corpus::Vocabulary &vocab,
                    const Models &models) {
  if (test.empty()) Fail(ErrorCode::kEmptyDataset, "no test utterances");
  const bool enhanced = UsesEnhancement(system);
  const AcousticModel &am =
      RequireModel(enhanced ? models.enhanced : models.raw, enhanced ? "SS" : "raw");
  const nnet::MlpModel *regressor = models.regressor ? &*models.regressor : nullptr;
  if (system == System::kUwDnn && !regressor)
    Fail(ErrorCode::kMissingDependency, "UW+UV_DNN needs a trained regressor");
  const WeightingParams wp = SystemWeighting(system, cfg);

  SystemRun run;
  run.records.resize(test.size());
  ParallelFor(test.size(), [&](std::size_t i) {
    const PreparedUtterance &u = test[i];
    const Matrix loglik =
        AcousticLogLikelihoods(am, enhanced ? u.enhanced : u.raw, cfg.acoustic.context);
    std::vector<double> weights;
    const std::vector<double> uv = SystemUv(system, u, regressor, cfg);
    if (!uv.empty()) weights = MakeTrack(uv, cfg.uv_half_width, wp).uw;
    run.records[i] = DecodeUtterance(u, loglik, weights, vocab, cfg.lm_scale);
  });
  std::vector<decoder::WerResult> wers;
  for (const auto &r : run.records) wers.push_back(r.wer);
  run.rows = GroupRows(corpus::TrainingConditionName(condition), SystemName(system), test, wers);
  return run;
}

GridResult RunOracleGrid(const ExperimentConfig &cfg, const std::vector<PreparedUtterance> &test,
                         const corpus::Vocabulary &vocab, const AcousticModel &enhanced_model) {
  Require(!cfg.th_grid.empty() && !cfg.k_grid.empty(), ErrorCode::kInvalidConfig,
          "oracle grid needs non-empty Th and K grids");
  if (test.empty()) Fail(ErrorCode::kEmptyDataset, "no test utterances");
  const std::size_t n = test.size();
  std::vector<Matrix> loglik(n);
  std::vector<decoder::WerResult> base(n);
  ParallelFor(n, [&](std::size_t i) {
    loglik[i] = AcousticLogLikelihoods(enhanced_model, test[i].enhanced, cfg.acoustic.context);
    base[i] = DecodeUtterance(test[i], loglik[i], {}, vocab, cfg.lm_scale).wer;
  });

  GridResult grid;
  for (const auto &row : GroupRows("", "", test, base)) grid.baseline_ss[row.test_group] = row.wer;

  const std::size_t nk = cfg.k_grid.size(), cells = cfg.th_grid.size() * nk;
  std::vector<decoder::WerResult> wers(cells * n);
  ParallelFor(cells * n, [&](std::size_t j) {
    const std::size_t c = j / n, i = j % n;
    const WeightingParams wp{cfg.th_grid[c / nk], cfg.k_grid[c % nk]};
    const auto weights = MakeTrack(test[i].oracle_uv, cfg.uv_half_width, wp).uw;
    wers[j] = DecodeUtterance(test[i], loglik[i], weights, vocab, cfg.lm_scale).wer;
  });
  for (std::size_t c = 0; c < cells; ++c) {
    const std::vector<decoder::WerResult> slice(wers.begin() + c * n, wers.begin() + (c + 1) * n);
    for (const auto &row : GroupRows("", "", test, slice)) {
      const GridCell cell{cfg.th_grid[c / nk], cfg.k_grid[c % nk], row.test_group, row.wer};
      grid.cells.push_back(cell);
      auto it = grid.argmin.find(cell.group);
      if (it == grid.argmin.end() || cell.wer < it->second.wer) grid.argmin[cell.group] = cell;
    }
  }
  return grid;
}

}  // namespace uwasr::experiments
