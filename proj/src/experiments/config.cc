// src/experiments/config.cc

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

#include "uwasr/experiments/config.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "uwasr/base/error.h"

namespace uwasr::experiments {

namespace pt = boost::property_tree;

namespace {

std::string Trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> SplitList(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string JoinList(const std::vector<std::string> &items) {
  std::string out;
  for (const auto &s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

std::string FormatNumber(double x) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double ParseNumber(const std::string &text, const std::string &what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || Trim(text.substr(used)) != "")
    Fail(ErrorCode::kInvalidConfig, what + ": not a number: '" + text + "'");
  return v;
}

// Reads from or writes to a property tree, one call per config field.
class Binder {
 public:
  Binder(pt::ptree *tree, bool load) : tree_(tree), load_(load) {}

  void Text(const std::string &section, const std::string &key, std::string *value,
            const std::string &current) {
    const std::string path = section + "." + key;
    seen_.insert(path);
    if (load_) {
      if (auto v = tree_->get_optional<std::string>(pt::ptree::path_type(path, '.')))
        *value = Trim(*v);
      else
        *value = current;
    } else {
      tree_->put(pt::ptree::path_type(path, '.'), current);
    }
  }

  void Field(const std::string &s, const std::string &k, double *v) {
    std::string t;
    Text(s, k, &t, FormatNumber(*v));
    if (load_) *v = ParseNumber(t, s + "." + k);
  }
  void Field(const std::string &s, const std::string &k, int *v) {
    std::string t;
    Text(s, k, &t, std::to_string(*v));
    if (load_) {
      const double d = ParseNumber(t, s + "." + k);
      if (d != std::floor(d)) Fail(ErrorCode::kInvalidConfig, s + "." + k + " must be an integer");
      *v = static_cast<int>(d);
    }
  }
  void Field(const std::string &s, const std::string &k, std::uint64_t *v) {
    std::string t;
    Text(s, k, &t, std::to_string(*v));
    if (load_) {
      try {
        std::size_t used = 0;
        *v = std::stoull(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
      } catch (const std::exception &) {
        Fail(ErrorCode::kInvalidConfig, s + "." + k + ": bad unsigned integer '" + t + "'");
      }
    }
  }
  void Field(const std::string &s, const std::string &k, bool *v) {
    std::string t;
    Text(s, k, &t, *v ? "true" : "false");
    if (!load_) return;
    if (t == "true" || t == "1") {
      *v = true;
    } else if (t == "false" || t == "0") {
      *v = false;
    } else {
      Fail(ErrorCode::kInvalidConfig, s + "." + k + ": expected true or false");
    }
  }
  void Field(const std::string &s, const std::string &k, std::string *v) {
    std::string t;
    Text(s, k, &t, *v);
    if (load_) *v = t;
  }
  void Field(const std::string &s, const std::string &k, std::vector<std::string> *v) {
    std::string t;
    Text(s, k, &t, JoinList(*v));
    if (load_) *v = SplitList(t);
  }
  void Field(const std::string &s, const std::string &k, std::vector<int> *v) {
    std::vector<std::string> items;
    for (int x : *v) items.push_back(std::to_string(x));
    Field(s, k, &items);
    if (!load_) return;
    v->clear();
    for (const auto &i : items) v->push_back(static_cast<int>(ParseNumber(i, s + "." + k)));
  }
  void Grid(const std::string &s, const std::string &k, std::vector<double> *v) {
    std::string t;
    Text(s, k, &t, FormatGrid(*v));
    if (load_) *v = t.empty() ? std::vector<double>{} : ParseGrid(t);
  }
  template <typename E, typename P, typename N>
  void Enums(const std::string &s, const std::string &k, std::vector<E> *v, P parse, N name) {
    std::vector<std::string> items;
    for (E e : *v) items.push_back(name(e));
    Field(s, k, &items);
    if (!load_) return;
    v->clear();
    for (const auto &i : items) v->push_back(parse(i));
  }
  template <typename E, typename P, typename N>
  void Enum(const std::string &s, const std::string &k, E *v, P parse, N name) {
    std::string t;
    Text(s, k, &t, name(*v));
    if (load_) *v = parse(t);
  }

  // Keys present in the tree that no field claimed.
  void CheckUnknown() const {
    for (const auto &[section, body] : *tree_) {
      if (body.empty() && !body.data().empty())
        Fail(ErrorCode::kInvalidConfig, "key outside a section: " + section);
      for (const auto &[key, value] : body)
        if (!seen_.count(section + "." + key))
          Fail(ErrorCode::kInvalidConfig, "unknown config key: " + section + "." + key);
    }
  }

 private:
  pt::ptree *tree_;
  bool load_;
  std::set<std::string> seen_;
};

void TrainFields(Binder &b, const std::string &s, nnet::TrainConfig *t) {
  b.Field(s, "epochs", &t->epochs);
  b.Field(s, "learning_rate", &t->learning_rate);
  b.Field(s, "batch_size", &t->batch_size);
  b.Field(s, "train_frac", &t->train_frac);
  b.Field(s, "val_frac", &t->val_frac);
  b.Field(s, "test_frac", &t->test_frac);
  b.Field(s, "early_stop", &t->early_stop);
  b.Field(s, "patience", &t->patience);
}

void Bind(Binder &b, ExperimentConfig *c) {
  auto &fe = c->frontend;
  b.Field("frontend", "frame_len_ms", &fe.frame_len_ms);
  b.Field("frontend", "frame_shift_ms", &fe.frame_shift_ms);
  b.Field("frontend", "fft_size", &fe.fft_size);
  b.Field("frontend", "n_mel", &fe.n_mel);
  b.Field("frontend", "mel_fmin", &fe.mel_fmin);
  b.Field("frontend", "mel_fmax", &fe.mel_fmax);
  b.Field("frontend", "energy_floor", &fe.energy_floor);
  b.Field("frontend", "delta_order", &fe.delta_order);
  b.Field("frontend", "preemphasis", &fe.preemphasis);
  b.Field("frontend", "noise_frames", &c->noise_frames);
  b.Field("frontend", "oracle_noise", &c->oracle_noise);

  b.Field("ss", "alpha0", &c->ss.alpha0);
  b.Field("ss", "beta", &c->ss.beta);
  b.Field("ss", "snr_knee", &c->ss.snr_knee);

  b.Field("uncertainty", "c", &c->model_uv.c);
  b.Field("uncertainty", "max_var", &c->model_uv.max_var);
  b.Field("uncertainty", "half_width", &c->uv_half_width);
  b.Field("uncertainty", "model_th", &c->weight_model.th);
  b.Field("uncertainty", "model_k", &c->weight_model.k);
  b.Field("uncertainty", "dnn_th", &c->weight_dnn.th);
  b.Field("uncertainty", "dnn_k", &c->weight_dnn.k);
  b.Field("uncertainty", "oracle_th", &c->weight_oracle.th);
  b.Field("uncertainty", "oracle_k", &c->weight_oracle.k);

  b.Field("decoder", "lm_scale", &c->lm_scale);

  auto &cc = c->corpus;
  auto &vc = cc.vocab;
  b.Field("corpus", "num_words", &vc.num_words);
  b.Field("corpus", "min_states", &vc.min_states);
  b.Field("corpus", "max_states", &vc.max_states);
  b.Field("corpus", "min_state_frames", &vc.min_state_frames);
  b.Field("corpus", "max_state_frames", &vc.max_state_frames);
  b.Field("corpus", "min_silence_frames", &vc.min_silence_frames);
  b.Field("corpus", "max_silence_frames", &vc.max_silence_frames);
  b.Field("corpus", "silence_level_db", &vc.silence_level_db);
  b.Field("corpus", "word_to_silence", &vc.word_to_silence);
  b.Field("corpus", "min_words", &cc.min_words);
  b.Field("corpus", "max_words", &cc.max_words);
  b.Enum("corpus", "condition", &cc.condition, corpus::ParseTrainingCondition,
         corpus::TrainingConditionName);
  b.Enums("corpus", "noise_types", &cc.noise_types, corpus::ParseNoiseType,
          corpus::NoiseTypeName);
  b.Field("corpus", "train_snr_min", &cc.train_snr_min);
  b.Field("corpus", "train_snr_max", &cc.train_snr_max);
  b.Field("corpus", "test_snr_min", &cc.test_snr_min);
  b.Field("corpus", "test_snr_max", &cc.test_snr_max);
  b.Field("corpus", "clean_fraction", &cc.clean_fraction);
  b.Field("corpus", "num_train", &cc.num_train);
  b.Field("corpus", "num_dev", &cc.num_dev);
  b.Field("corpus", "num_test", &cc.num_test);
  b.Field("corpus", "rms", &cc.rms);

  b.Field("acoustic", "hidden", &c->acoustic.hidden);
  b.Field("acoustic", "context", &c->acoustic.context);
  b.Field("acoustic", "seed", &c->acoustic.seed);
  TrainFields(b, "acoustic", &c->acoustic.train);

  b.Field("regressor", "topology", &c->regressor.topology);
  b.Field("regressor", "feature", &c->regressor.feature);
  b.Field("regressor", "topologies", &c->regressor.topologies);
  b.Field("regressor", "features", &c->regressor.features);
  b.Field("regressor", "max_frames", &c->regressor.max_frames);
  b.Field("regressor", "seed", &c->regressor.seed);
  TrainFields(b, "regressor", &c->regressor.train);

  b.Field("experiment", "seed", &cc.seed);
  b.Enums("experiment", "systems", &c->systems, ParseSystem, SystemName);
  b.Enums("experiment", "conditions", &c->conditions, corpus::ParseTrainingCondition,
          corpus::TrainingConditionName);
  b.Grid("experiment", "th_grid", &c->th_grid);
  b.Grid("experiment", "k_grid", &c->k_grid);
  b.Field("experiment", "jobs", &c->jobs);
}

}  // namespace

System ParseSystem(const std::string &name) {
  for (System s : AllSystems())
    if (SystemName(s) == name) return s;
  Fail(ErrorCode::kInvalidConfig, "unknown system: " + name);
}

std::string SystemName(System system) {
  switch (system) {
    case System::kBaseline: return "baseline";
    case System::kBaselineSs: return "baseline+SS";
    case System::kUwModel: return "UW+UV_model";
    case System::kUwDnn: return "UW+UV_DNN";
    case System::kUwOracle: return "UW+UV_oracle";
  }
  return "baseline";
}

const std::vector<System> &AllSystems() {
  static const std::vector<System> all{System::kBaseline, System::kBaselineSs, System::kUwModel,
                                       System::kUwDnn, System::kUwOracle};
  return all;
}

ExperimentConfig::ExperimentConfig() {
  acoustic.train.loss = nnet::Loss::kCrossEntropy;
  acoustic.train.standardize_targets = false;
  regressor.train.loss = nnet::Loss::kMse;
  th_grid = ParseGrid("1:18");
  k_grid = {1, 2, 4, 5, 8, 12, 16};
}

void ExperimentConfig::SetSeed(std::uint64_t seed) { corpus.seed = seed; }

void ExperimentConfig::Validate() const {
  frontend.Validate(16000);
  Require(noise_frames >= 1, ErrorCode::kInvalidConfig, "noise_frames must be >= 1");
  ss.Validate();
  model_uv.Validate();
  Require(uv_half_width >= 0, ErrorCode::kInvalidConfig, "half_width must be >= 0");
  weight_model.Validate();
  weight_dnn.Validate();
  weight_oracle.Validate();
  Require(lm_scale > 0.0, ErrorCode::kInvalidConfig, "lm_scale must be > 0");
  corpus.Validate();
  Require(!acoustic.hidden.empty(), ErrorCode::kInvalidConfig, "acoustic.hidden is empty");
  for (int h : acoustic.hidden)
    Require(h >= 1, ErrorCode::kInvalidConfig, "acoustic hidden sizes must be >= 1");
  Require(acoustic.context >= 0, ErrorCode::kInvalidConfig, "acoustic.context must be >= 0");
  acoustic.train.Validate();
  regressor.train.Validate();
  Require(regressor.max_frames >= 1, ErrorCode::kInvalidConfig, "max_frames must be >= 1");
  Require(!regressor.topologies.empty() && !regressor.features.empty(),
          ErrorCode::kInvalidConfig, "regressor grid is empty");
  Require(!systems.empty(), ErrorCode::kInvalidConfig, "no systems requested");
  Require(!conditions.empty(), ErrorCode::kInvalidConfig, "no training conditions requested");
  for (double th : th_grid) Require(th > 0.0, ErrorCode::kInvalidConfig, "Th values must be > 0");
  for (double k : k_grid) Require(k > 0.0, ErrorCode::kInvalidConfig, "K values must be > 0");
  Require(jobs >= 0, ErrorCode::kInvalidConfig, "jobs must be >= 0");
}

std::vector<double> ParseGrid(const std::string &text) {
  std::vector<double> out;
  const std::string t = Trim(text);
  if (t.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::istringstream in(t);
    for (std::string p; std::getline(in, p, ':');) parts.push_back(ParseNumber(p, "grid"));
    Require(parts.size() == 2 || parts.size() == 3, ErrorCode::kInvalidConfig,
            "grid range must be a:b or a:b:step");
    const double step = parts.size() == 3 ? parts[2] : 1.0;
    Require(step > 0.0 && parts[1] >= parts[0], ErrorCode::kInvalidConfig, "bad grid range");
    const long n = std::lround(std::floor((parts[1] - parts[0]) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(parts[0] + step * static_cast<double>(i));
  } else {
    for (const auto &item : SplitList(t)) out.push_back(ParseNumber(item, "grid"));
  }
  Require(!out.empty(), ErrorCode::kInvalidConfig, "empty grid: '" + text + "'");
  return out;
}

std::string FormatGrid(const std::vector<double> &grid) {
  std::string out;
  for (double v : grid) out += (out.empty() ? "" : ",") + FormatNumber(v);
  return out;
}

ExperimentConfig LoadConfig(const std::string &path) {
  if (!std::filesystem::exists(path)) Fail(ErrorCode::kIoError, "config not found: " + path);
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error &e) {
    Fail(ErrorCode::kInvalidConfig, std::string("config parse error: ") + e.what());
  }
  ExperimentConfig cfg;
  Binder b(&tree, true);
  Bind(b, &cfg);
  b.CheckUnknown();
  cfg.Validate();
  return cfg;
}

void SaveConfig(const ExperimentConfig &cfg, const std::string &path) {
  pt::ptree tree;
  Binder b(&tree, false);
  ExperimentConfig copy = cfg;
  Bind(b, &copy);
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kIoError, "cannot write " + path);
  try {
    pt::write_ini(out, tree);
  } catch (const pt::ini_parser_error &e) {
    Fail(ErrorCode::kIoError, std::string("config write error: ") + e.what());
  }
  out.close();
  if (!out) Fail(ErrorCode::kIoError, "write failed for " + path);
}

}  // namespace uwasr::experiments
