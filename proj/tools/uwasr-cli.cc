// tools/uwasr-cli.cc

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

// uwasr: corpus synthesis, training, decoding and grid experiments.
//
//   uwasr corpus build      --out DIR [--config FILE] [--seed N]
//   uwasr train acoustic    --out DIR [--condition clean|multi-noise]
//   uwasr train regressor   --out DIR
//   uwasr decode            --out DIR [--system NAME]... [--condition C]
//   uwasr grid oracle       --out DIR [--th-grid 1:18] [--k-grid 1,2,4]
//   uwasr grid regressor    --out DIR
//   uwasr report            --out DIR

#include <omp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "uwasr/base/error.h"
#include "uwasr/experiments/config.h"
#include "uwasr/experiments/pipeline.h"
#include "uwasr/experiments/report.h"
#include "uwasr/nnet/mlp-io.h"

namespace fs = std::filesystem;
using namespace uwasr;
using namespace uwasr::experiments;

namespace {

struct Options {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = -1;
  std::vector<std::string> systems;
  std::string condition;
  std::string th_grid;
  std::string k_grid;
};

ExperimentConfig Resolve(const Options &o) {
  ExperimentConfig cfg;
  const fs::path saved = fs::path(o.out) / "config.ini";
  if (!o.config.empty()) {
    cfg = LoadConfig(o.config);
  } else if (fs::exists(saved)) {
    cfg = LoadConfig(saved.string());
  }
  if (o.seed_set) cfg.SetSeed(o.seed);
  if (o.jobs >= 0) cfg.jobs = o.jobs;
  cfg.Validate();
  std::error_code ec;
  fs::create_directories(o.out, ec);
  if (ec) Fail(ErrorCode::kIoError, "cannot create " + o.out);
  // Per-command selections are not persisted.
  SaveConfig(cfg, saved.string());
  if (!o.systems.empty()) {
    cfg.systems.clear();
    for (const auto &s : o.systems) cfg.systems.push_back(ParseSystem(s));
  }
  if (!o.condition.empty()) cfg.conditions = {corpus::ParseTrainingCondition(o.condition)};
  if (!o.th_grid.empty()) cfg.th_grid = ParseGrid(o.th_grid);
  if (!o.k_grid.empty()) cfg.k_grid = ParseGrid(o.k_grid);
  cfg.Validate();
  if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
  return cfg;
}

std::string Sub(const Options &o, const std::string &a, const std::string &b = "") {
  fs::path p = fs::path(o.out) / a;
  if (!b.empty()) p /= b;
  return p.string();
}

void WriteCurve(const std::string &path, const std::vector<nnet::EpochLoss> &curve, nnet::Loss loss) {
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kIoError, "cannot write " + path);
  nnet::WriteTrainingCurveCsv(out, curve, loss);
}

void CorpusBuild(const Options &o) {
  const ExperimentConfig cfg = Resolve(o);
  const corpus::Corpus c = corpus::BuildCorpus(cfg.corpus, cfg.frontend);
  corpus::WriteCorpus(c, Sub(o, "corpus"));
  std::printf("wrote %zu utterances to %s\n", c.records.size(), Sub(o, "corpus").c_str());
}

void TrainAcousticCmd(const Options &o) {
  const ExperimentConfig cfg = Resolve(o);
  const corpus::Corpus c = corpus::ReadCorpus(Sub(o, "corpus"));
  const int states = c.vocab.lexicon.NumStates();
  fs::create_directories(Sub(o, "models"));
  for (auto condition : cfg.conditions) {
    const auto train = PrepareTraining(c, condition, cfg);
    for (bool enhanced : {false, true}) {
      std::vector<nnet::EpochLoss> curve;
      const AcousticModel m = TrainAcoustic(cfg, train, enhanced, states, &curve);
      const std::string name = AcousticModelName(condition, enhanced);
      WriteAcousticModel(Sub(o, "models"), name, m);
      WriteCurve(Sub(o, "models", name + "_curve.csv"), curve, nnet::Loss::kCrossEntropy);
      std::printf("%s: train xent %.4f, val xent %.4f\n", name.c_str(), m.mlp.info.train_loss,
                  m.mlp.info.val_loss);
    }
  }
}

void TrainRegressorCmd(const Options &o) {
  const ExperimentConfig cfg = Resolve(o);
  const corpus::Corpus c = corpus::ReadCorpus(Sub(o, "corpus"));
  const auto train = PrepareTraining(c, corpus::TrainingCondition::kMultiNoise, cfg);
  const RegressorCell cell =
      TrainRegressor(cfg, train, cfg.regressor.topology, cfg.regressor.feature);
  const std::string name = RegressorModelName(cell.topology, cell.feature);
  fs::create_directories(Sub(o, "models"));
  nnet::WriteMlpFile(Sub(o, "models", name + ".mlp"), cell.result.model);
  WriteCurve(Sub(o, "models", name + "_curve.csv"), cell.result.curve, nnet::Loss::kMse);
  std::printf("%s: test mse %.6g\n", name.c_str(), cell.test_mse);
}

void DecodeCmd(const Options &o) {
  const ExperimentConfig cfg = Resolve(o);
  const corpus::Corpus c = corpus::ReadCorpus(Sub(o, "corpus"));
  const auto test = PrepareTest(c, cfg);
  bool need_raw = false, need_ss = false, need_dnn = false;
  for (System s : cfg.systems) {
    (UsesEnhancement(s) ? need_ss : need_raw) = true;
    need_dnn |= s == System::kUwDnn;
  }
  Models models;
  if (need_dnn)
    models.regressor = nnet::ReadMlpFile(
        Sub(o, "models", RegressorModelName(cfg.regressor.topology, cfg.regressor.feature) + ".mlp"));
  std::vector<ResultRow> rows;
  for (auto condition : cfg.conditions) {
    if (need_raw) models.raw = ReadAcousticModel(Sub(o, "models"), AcousticModelName(condition, false));
    if (need_ss) models.enhanced = ReadAcousticModel(Sub(o, "models"), AcousticModelName(condition, true));
    const std::string dir = Sub(o, "decode", corpus::TrainingConditionName(condition));
    fs::create_directories(dir);
    for (System s : cfg.systems) {
      const SystemRun run = RunSystem(cfg, s, condition, test, c.vocab, models);
      decoder::WriteDecodeCsv((fs::path(dir) / (SystemName(s) + ".csv")).string(), run.records);
      decoder::WriteAlignmentReport((fs::path(dir) / (SystemName(s) + ".ali.txt")).string(),
                                    run.records);
      for (const auto &r : run.rows) {
        std::printf("%-12s %-13s %-4s %7.2f\n", r.training.c_str(), r.system.c_str(),
                    r.test_group.c_str(), r.wer);
        rows.push_back(r);
      }
    }
  }
  WriteWerTable(Sub(o, "decode", "wer_table.csv"), rows);
}

void GridOracleCmd(const Options &o) {
  const ExperimentConfig cfg = Resolve(o);
  const corpus::Corpus c = corpus::ReadCorpus(Sub(o, "corpus"));
  const auto condition = cfg.conditions.front();
  const AcousticModel am = ReadAcousticModel(Sub(o, "models"), AcousticModelName(condition, true));
  const auto test = PrepareTest(c, cfg);
  const GridResult grid = RunOracleGrid(cfg, test, c.vocab, am);
  WriteGridCsv(Sub(o, "grid", "oracle_surface.csv"), grid.cells);
  WriteGridDat(Sub(o, "grid", "oracle_surface_B.dat"), grid.cells, "B");
  std::vector<ResultRow> base;
  for (const auto &[group, wer] : grid.baseline_ss)
    base.push_back({corpus::TrainingConditionName(condition), group, SystemName(System::kBaselineSs), wer});
  WriteWerTable(Sub(o, "grid", "oracle_baseline.csv"), base);
  WriteGridSummary(Sub(o, "grid", "oracle_summary.txt"), grid);
  for (const auto &[group, best] : grid.argmin)
    std::printf("group %-3s baseline+SS %6.2f  argmin Th=%g K=%g WER %6.2f\n", group.c_str(),
                grid.baseline_ss.at(group), best.th, best.k, best.wer);
}

void GridRegressorCmd(const Options &o) {
  const ExperimentConfig cfg = Resolve(o);
  const corpus::Corpus c = corpus::ReadCorpus(Sub(o, "corpus"));
  const auto train = PrepareTraining(c, corpus::TrainingCondition::kMultiNoise, cfg);
  std::vector<RegressorRow> rows;
  fs::create_directories(Sub(o, "grid", "curves"));
  for (const auto &cell : RunRegressorGrid(cfg, train)) {
    rows.push_back({cell.topology, cell.feature, cell.test_mse});
    WriteCurve(Sub(o, "grid", "curves/" + RegressorModelName(cell.topology, cell.feature) + ".csv"),
               cell.result.curve, nnet::Loss::kMse);
    std::printf("%s %s test mse %.6g\n", cell.topology.c_str(), cell.feature.c_str(), cell.test_mse);
  }
  WriteRegressorTable(Sub(o, "grid", "regressor_table.csv"), rows);
  WriteRegressorTableText(Sub(o, "grid", "regressor_table.txt"), rows);
}

void ReportCmd(const Options &o) {
  for (const auto &f : EmitReport(o.out)) std::printf("wrote %s\n", f.c_str());
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"uncertainty-weighted decoding experiments"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App *cmd) {
    cmd->add_option("--out", o.out, "output directory")->required();
    cmd->add_option("--config", o.config, "INI config (default: <out>/config.ini if present)");
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&o](std::uint64_t s) {
          o.seed = s;
          o.seed_set = true;
        }, "master seed");
    cmd->add_option("--jobs", o.jobs, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  };
  auto with_condition = [&o](CLI::App *cmd) {
    cmd->add_option("--condition", o.condition, "clean or multi-noise");
  };

  auto *corpus_cmd = app.add_subcommand("corpus", "synthetic corpus")->require_subcommand(1);
  auto *build = corpus_cmd->add_subcommand("build", "synthesize and write the corpus");
  common(build);
  build->callback([&] { CorpusBuild(o); });

  auto *train = app.add_subcommand("train", "model training")->require_subcommand(1);
  auto *acoustic = train->add_subcommand("acoustic", "acoustic state classifiers");
  common(acoustic);
  with_condition(acoustic);
  acoustic->callback([&] { TrainAcousticCmd(o); });
  auto *regressor = train->add_subcommand("regressor", "uncertainty regressor");
  common(regressor);
  regressor->callback([&] { TrainRegressorCmd(o); });

  auto *decode = app.add_subcommand("decode", "decode the test splits");
  common(decode);
  with_condition(decode);
  decode->add_option("--system", o.systems, "system name (repeatable)");
  decode->callback([&] { DecodeCmd(o); });

  auto *grid = app.add_subcommand("grid", "grid experiments")->require_subcommand(1);
  auto *oracle = grid->add_subcommand("oracle", "oracle-uncertainty WER over (Th, K)");
  common(oracle);
  with_condition(oracle);
  oracle->add_option("--th-grid", o.th_grid, "Th values: a:b[:step] or comma list");
  oracle->add_option("--k-grid", o.k_grid, "K values: a:b[:step] or comma list");
  oracle->callback([&] { GridOracleCmd(o); });
  auto *rgrid = grid->add_subcommand("regressor", "topology x feature MSE table");
  common(rgrid);
  rgrid->callback([&] { GridRegressorCmd(o); });

  auto *report = app.add_subcommand("report", "plain-text tables from existing results");
  report->add_option("--out", o.out, "output directory")->required();
  report->callback([&] { ReportCmd(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  } catch (const Error &e) {
    std::fprintf(stderr, "uwasr: error [%s]: %s\n", ErrorCodeName(e.code()), e.what());
    return 1;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "uwasr: error: %s\n", e.what());
    return 1;
  }
  return 0;
}
