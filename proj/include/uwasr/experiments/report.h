// uwasr/experiments/report.h

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

#ifndef UWASR_EXPERIMENTS_REPORT_H_
#define UWASR_EXPERIMENTS_REPORT_H_

#include <string>
#include <vector>

#include "uwasr/experiments/pipeline.h"

namespace uwasr::experiments {

// Every writer throws kEmptyInput for an empty table (no file is created)
// and kIoError when the path cannot be written.

// training,test_group,system,wer
void WriteWerTable(const std::string &path, const std::vector<ResultRow> &rows);
std::vector<ResultRow> ReadWerTable(const std::string &path);
// One line per (training, system), one column per test group.
void WriteWerTableText(const std::string &path, const std::vector<ResultRow> &rows);

// Th,K,group,wer
void WriteGridCsv(const std::string &path, const std::vector<GridCell> &cells);
std::vector<GridCell> ReadGridCsv(const std::string &path);
// gnuplot splot blocks ("Th K wer", blank line between Th values) for one group.
void WriteGridDat(const std::string &path, const std::vector<GridCell> &cells,
                  const std::string &group);
// Baseline+SS WER, argmin cell and relative change per group.
void WriteGridSummary(const std::string &path, const GridResult &grid);

struct RegressorRow {
  std::string topology;
  std::string feature;
  double mse = 0.0;
};
// topology,feature,mse
void WriteRegressorTable(const std::string &path, const std::vector<RegressorRow> &rows);
std::vector<RegressorRow> ReadRegressorTable(const std::string &path);
// Topologies down, features across; the minimum is starred.
void WriteRegressorTableText(const std::string &path, const std::vector<RegressorRow> &rows);

/// Turns whatever result tables exist under out_dir (decode/, grid/) into
/// plain-text tables under out_dir/report. Returns the files written;
/// throws kMissingDependency when there is nothing to report.
std::vector<std::string> EmitReport(const std::string &out_dir);

}  // namespace uwasr::experiments

#endif  // UWASR_EXPERIMENTS_REPORT_H_
