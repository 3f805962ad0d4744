// uwasr/experiments/config.h

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

#ifndef UWASR_EXPERIMENTS_CONFIG_H_
#define UWASR_EXPERIMENTS_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "uwasr/corpus/corpus.h"
#include "uwasr/enhancement/spectral-subtraction.h"
#include "uwasr/frontend/frontend.h"
#include "uwasr/nnet/mlp-train.h"
#include "uwasr/uncertainty/uncertainty.h"

namespace uwasr::experiments {

enum class System { kBaseline, kBaselineSs, kUwModel, kUwDnn, kUwOracle };

// "baseline", "baseline+SS", "UW+UV_model", "UW+UV_DNN", "UW+UV_oracle"
System ParseSystem(const std::string &name);
std::string SystemName(System system);
const std::vector<System> &AllSystems();
inline bool UsesEnhancement(System s) { return s != System::kBaseline; }

struct AcousticConfig {
  std::vector<int> hidden{96, 96};
  int context = 4;  // frames on each side
  nnet::TrainConfig train;
  std::uint64_t seed = 11;
};

struct RegressorConfig {
  std::string topology = "C1";  // used by UW+UV_DNN
  std::string feature = "f2";
  std::vector<std::string> topologies{"C1", "C2", "C3", "C4"};
  std::vector<std::string> features{"f1", "f2", "f3"};
  nnet::TrainConfig train;
  int max_frames = 20000;  // training frames drawn from the multi-noise split
  std::uint64_t seed = 23;
};

struct ExperimentConfig {
  FrontendConfig frontend;
  int noise_frames = 10;
  bool oracle_noise = false;
  SsConfig ss;
  ModelUncertaintyConfig model_uv;
  int uv_half_width = 5;
  WeightingParams weight_model{0.25, 5.0};
  WeightingParams weight_dnn{8.0, 5.0};
  WeightingParams weight_oracle{8.0, 5.0};
  double lm_scale = 1.0;
  corpus::CorpusConfig corpus;
  AcousticConfig acoustic;
  RegressorConfig regressor;
  std::vector<System> systems = AllSystems();
  std::vector<corpus::TrainingCondition> conditions{corpus::TrainingCondition::kClean,
                                                    corpus::TrainingCondition::kMultiNoise};
  std::vector<double> th_grid;
  std::vector<double> k_grid;
  int jobs = 0;  // 0 = OpenMP default

  ExperimentConfig();
  std::uint64_t Seed() const { return corpus.seed; }
  void SetSeed(std::uint64_t seed);
  void Validate() const;  // Throws kInvalidConfig.
};

// "a:b" (step 1), "a:b:step" or "v1,v2,...". Throws kInvalidConfig.
std::vector<double> ParseGrid(const std::string &text);
std::string FormatGrid(const std::vector<double> &grid);

/// INI file with sections [frontend] [ss] [uncertainty] [decoder] [corpus]
/// [acoustic] [regressor] [experiment]. Keys not present keep their
/// defaults; unknown keys are an error. Throws kIoError, kInvalidConfig.
ExperimentConfig LoadConfig(const std::string &path);
void SaveConfig(const ExperimentConfig &cfg, const std::string &path);

}  // namespace uwasr::experiments

#endif  // UWASR_EXPERIMENTS_CONFIG_H_
