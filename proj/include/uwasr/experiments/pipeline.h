// uwasr/experiments/pipeline.h

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

#ifndef UWASR_EXPERIMENTS_PIPELINE_H_
#define UWASR_EXPERIMENTS_PIPELINE_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uwasr/corpus/corpus.h"
#include "uwasr/decoder/decode-io.h"
#include "uwasr/experiments/config.h"
#include "uwasr/nnet/mlp-train.h"
#include "uwasr/nnet/nnet-features.h"

namespace uwasr::experiments {

/// Everything the systems need from one utterance, computed once.
struct PreparedUtterance {
  std::string id;
  std::string split;
  std::vector<std::string> reference;  // scored words
  std::vector<int> alignment;
  Features raw;       // observed audio
  Features enhanced;  // observed audio after spectral subtraction
  Matrix clean_statics;
  std::vector<double> model_uv;   // per frame, mean Eq.-(1)-style variance
  std::vector<double> oracle_uv;  // per frame, MSE of enhanced vs clean statics

  std::size_t NumFrames() const { return alignment.size(); }
};

// observe_clean: analyse the clean twin instead of the observed signal.
PreparedUtterance PrepareUtterance(const corpus::UtteranceRecord &record,
                                   const ExperimentConfig &cfg, bool observe_clean = false);
std::vector<PreparedUtterance> PrepareRecords(
    const std::vector<const corpus::UtteranceRecord *> &records, const ExperimentConfig &cfg,
    bool observe_clean = false);
// Training split as seen by a training condition.
std::vector<PreparedUtterance> PrepareTraining(const corpus::Corpus &corpus,
                                               corpus::TrainingCondition condition,
                                               const ExperimentConfig &cfg);
// Every test split (test-clean first).
std::vector<PreparedUtterance> PrepareTest(const corpus::Corpus &corpus,
                                           const ExperimentConfig &cfg);

struct AcousticModel {
  nnet::MlpModel mlp;
  std::vector<double> priors;
};

std::string AcousticModelName(corpus::TrainingCondition condition, bool enhanced);

nnet::Dataset AcousticDataset(const std::vector<PreparedUtterance> &utts, bool enhanced,
                              int context, int num_states);
AcousticModel TrainAcoustic(const ExperimentConfig &cfg, const std::vector<PreparedUtterance> &train,
                            bool enhanced, int num_states,
                            std::vector<nnet::EpochLoss> *curve = nullptr);
// Pseudo-log-likelihoods, frames x states.
Matrix AcousticLogLikelihoods(const AcousticModel &model, const Features &features, int context);

void WriteAcousticModel(const std::string &dir, const std::string &name, const AcousticModel &m);
// Throws kMissingDependency.
AcousticModel ReadAcousticModel(const std::string &dir, const std::string &name);

// Per-frame regressor inputs for one utterance.
Matrix RegressorInputs(const PreparedUtterance &utt, nnet::FeatureVariant variant);
nnet::Dataset RegressorDataset(const std::vector<PreparedUtterance> &utts,
                               nnet::FeatureVariant variant, int max_frames, std::uint64_t seed);
std::vector<double> PredictUv(const nnet::MlpModel &model, const PreparedUtterance &utt,
                              nnet::FeatureVariant variant);

struct RegressorCell {
  std::string topology;
  std::string feature;
  double test_mse = 0.0;
  nnet::TrainResult result;
};
std::string RegressorModelName(const std::string &topology, const std::string &feature);
RegressorCell TrainRegressor(const ExperimentConfig &cfg, const std::vector<PreparedUtterance> &train,
                             const std::string &topology, const std::string &feature);
// Every (topology, feature) cell of cfg.regressor. Input: the multi-noise training split.
std::vector<RegressorCell> RunRegressorGrid(const ExperimentConfig &cfg,
                                            const std::vector<PreparedUtterance> &train);

// UV source feeding the weighting of a system; empty for unweighted systems.
std::vector<double> SystemUv(System system, const PreparedUtterance &utt,
                             const nnet::MlpModel *regressor, const ExperimentConfig &cfg);
WeightingParams SystemWeighting(System system, const ExperimentConfig &cfg);

decoder::DecodeRecord DecodeUtterance(const PreparedUtterance &utt, const Matrix &loglik,
                                      const std::vector<double> &weights,
                                      const corpus::Vocabulary &vocab, double lm_scale);

struct ResultRow {
  std::string training;
  std::string test_group;
  std::string system;
  double wer = 0.0;
};

// Group A = test-clean, B = pooled noisy test splits, AVG = everything.
inline const std::vector<std::string> &TestGroups() {
  static const std::vector<std::string> groups{"A", "B", "AVG"};
  return groups;
}
bool InGroup(const std::string &split, const std::string &group);

struct Models {
  std::optional<AcousticModel> raw;       // for the baseline
  std::optional<AcousticModel> enhanced;  // for every SS system
  std::optional<nnet::MlpModel> regressor;
};

struct SystemRun {
  std::vector<ResultRow> rows;
  std::vector<decoder::DecodeRecord> records;  // aligned with the test utterances
};

/// Decodes every prepared test utterance with one system. Throws
/// kMissingDependency if the system needs a model that is absent.
SystemRun RunSystem(const ExperimentConfig &cfg, System system,
                    corpus::TrainingCondition condition,
                    const std::vector<PreparedUtterance> &test, const corpus::Vocabulary &vocab,
                    const Models &models);

struct GridCell {
  double th = 0.0;
  double k = 0.0;
  std::string group;
  double wer = 0.0;
};
struct GridResult {
  std::vector<GridCell> cells;
  std::map<std::string, double> baseline_ss;  // group -> baseline+SS WER
  std::map<std::string, GridCell> argmin;     // group -> best cell
};

/// Oracle-uncertainty WER surface over cfg.th_grid x cfg.k_grid.
GridResult RunOracleGrid(const ExperimentConfig &cfg, const std::vector<PreparedUtterance> &test,
                         const corpus::Vocabulary &vocab, const AcousticModel &enhanced_model);

}  // namespace uwasr::experiments

#endif  // UWASR_EXPERIMENTS_PIPELINE_H_
