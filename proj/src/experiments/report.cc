// src/experiments/report.cc

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

#include "uwasr/experiments/report.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "uwasr/base/error.h"

namespace uwasr::experiments {

namespace fs = std::filesystem;

namespace {

std::string Num(double x, const char *fmt = "%.17g") {
  char buf[48];
  std::snprintf(buf, sizeof(buf), fmt, x);
  return buf;
}

// Opens `path` for writing after checking the table is non-empty.
std::ofstream OpenTable(const std::string &path, bool empty, const std::string &what) {
  if (empty) Fail(ErrorCode::kEmptyInput, "refusing to write an empty " + what + " table");
  const fs::path parent = fs::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) fs::create_directories(parent, ec);
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kIoError, "cannot write " + path);
  return out;
}

void Finish(std::ofstream &out, const std::string &path) {
  out.close();
  if (!out) Fail(ErrorCode::kIoError, "write failed for " + path);
}

std::vector<std::vector<std::string>> ReadCsv(const std::string &path, const std::string &header) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kMissingDependency, "cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line != header)
    Fail(ErrorCode::kFormatError, path + ": expected header '" + header + "'");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string field; std::getline(ls, field, ',');) f.push_back(field);
    rows.push_back(std::move(f));
  }
  return rows;
}

double ToDouble(const std::string &s, const std::string &path) {
  try {
    return std::stod(s);
  } catch (const std::exception &) {
    Fail(ErrorCode::kFormatError, path + ": bad number '" + s + "'");
  }
}

std::string Pad(const std::string &s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

void WriteWerTable(const std::string &path, const std::vector<ResultRow> &rows) {
  auto out = OpenTable(path, rows.empty(), "WER");
  out << "training,test_group,system,wer\n";
  for (const auto &r : rows)
    out << r.training << ',' << r.test_group << ',' << r.system << ',' << Num(r.wer) << '\n';
  Finish(out, path);
}

std::vector<ResultRow> ReadWerTable(const std::string &path) {
  std::vector<ResultRow> rows;
  for (const auto &f : ReadCsv(path, "training,test_group,system,wer")) {
    if (f.size() != 4) Fail(ErrorCode::kFormatError, path + ": expected 4 fields");
    rows.push_back({f[0], f[1], f[2], ToDouble(f[3], path)});
  }
  return rows;
}

void WriteWerTableText(const std::string &path, const std::vector<ResultRow> &rows) {
  auto out = OpenTable(path, rows.empty(), "WER");
  std::vector<std::string> groups;
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::pair<std::string, std::string>, std::map<std::string, double>> cell;
  for (const auto &r : rows) {
    if (std::find(groups.begin(), groups.end(), r.test_group) == groups.end())
      groups.push_back(r.test_group);
    const auto key = std::make_pair(r.training, r.system);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    cell[key][r.test_group] = r.wer;
  }
  out << Pad("training", 13) << Pad("system", 14);
  for (const auto &g : groups) out << Pad(g, 9);
  out << '\n';
  for (const auto &key : keys) {
    out << Pad(key.first, 13) << Pad(key.second, 14);
    for (const auto &g : groups) {
      auto it = cell[key].find(g);
      out << Pad(it == cell[key].end() ? "-" : Num(it->second, "%.2f"), 9);
    }
    out << '\n';
  }
  Finish(out, path);
}

void WriteGridCsv(const std::string &path, const std::vector<GridCell> &cells) {
  auto out = OpenTable(path, cells.empty(), "grid");
  out << "Th,K,group,wer\n";
  for (const auto &c : cells)
    out << Num(c.th) << ',' << Num(c.k) << ',' << c.group << ',' << Num(c.wer) << '\n';
  Finish(out, path);
}

std::vector<GridCell> ReadGridCsv(const std::string &path) {
  std::vector<GridCell> cells;
  for (const auto &f : ReadCsv(path, "Th,K,group,wer")) {
    if (f.size() != 4) Fail(ErrorCode::kFormatError, path + ": expected 4 fields");
    cells.push_back({ToDouble(f[0], path), ToDouble(f[1], path), f[2], ToDouble(f[3], path)});
  }
  return cells;
}

void WriteGridDat(const std::string &path, const std::vector<GridCell> &cells,
                  const std::string &group) {
  std::vector<GridCell> sel;
  for (const auto &c : cells)
    if (c.group == group) sel.push_back(c);
  auto out = OpenTable(path, sel.empty(), "grid surface");
  std::stable_sort(sel.begin(), sel.end(), [](const GridCell &a, const GridCell &b) {
    return a.th < b.th || (a.th == b.th && a.k < b.k);
  });
  out << "# Th K wer (group " << group << ")\n";
  for (std::size_t i = 0; i < sel.size(); ++i) {
    if (i > 0 && sel[i].th != sel[i - 1].th) out << '\n';
    out << Num(sel[i].th, "%g") << ' ' << Num(sel[i].k, "%g") << ' ' << Num(sel[i].wer, "%.6f")
        << '\n';
  }
  Finish(out, path);
}

void WriteGridSummary(const std::string &path, const GridResult &grid) {
  auto out = OpenTable(path, grid.cells.empty(), "grid");
  out << Pad("group", 7) << Pad("baseline+SS", 13) << Pad("argmin WER", 12) << Pad("Th", 6)
      << Pad("K", 6) << "relative change\n";
  for (const auto &[group, best] : grid.argmin) {
    const auto it = grid.baseline_ss.find(group);
    const double base = it == grid.baseline_ss.end() ? 0.0 : it->second;
    const std::string rel = base > 0.0 ? Num(100.0 * (best.wer - base) / base, "%+.2f%%") : "n/a";
    out << Pad(group, 7) << Pad(Num(base, "%.2f"), 13) << Pad(Num(best.wer, "%.2f"), 12)
        << Pad(Num(best.th, "%g"), 6) << Pad(Num(best.k, "%g"), 6) << rel << '\n';
  }
  Finish(out, path);
}

void WriteRegressorTable(const std::string &path, const std::vector<RegressorRow> &rows) {
  auto out = OpenTable(path, rows.empty(), "regressor");
  out << "topology,feature,mse\n";
  for (const auto &r : rows) out << r.topology << ',' << r.feature << ',' << Num(r.mse) << '\n';
  Finish(out, path);
}

std::vector<RegressorRow> ReadRegressorTable(const std::string &path) {
  std::vector<RegressorRow> rows;
  for (const auto &f : ReadCsv(path, "topology,feature,mse")) {
    if (f.size() != 3) Fail(ErrorCode::kFormatError, path + ": expected 3 fields");
    rows.push_back({f[0], f[1], ToDouble(f[2], path)});
  }
  return rows;
}

void WriteRegressorTableText(const std::string &path, const std::vector<RegressorRow> &rows) {
  auto out = OpenTable(path, rows.empty(), "regressor");
  std::vector<std::string> topologies, features;
  std::map<std::pair<std::string, std::string>, double> mse;
  const RegressorRow *best = &rows.front();
  for (const auto &r : rows) {
    if (std::find(topologies.begin(), topologies.end(), r.topology) == topologies.end())
      topologies.push_back(r.topology);
    if (std::find(features.begin(), features.end(), r.feature) == features.end())
      features.push_back(r.feature);
    mse[{r.topology, r.feature}] = r.mse;
    if (r.mse < best->mse) best = &r;
  }
  out << Pad("", 6);
  for (const auto &f : features) out << Pad(f, 12);
  out << '\n';
  for (const auto &t : topologies) {
    out << Pad(t, 6);
    for (const auto &f : features) {
      auto it = mse.find({t, f});
      std::string v = it == mse.end() ? "-" : Num(it->second, "%.4f");
      if (t == best->topology && f == best->feature) v += "*";
      out << Pad(v, 12);
    }
    out << '\n';
  }
  Finish(out, path);
}

std::vector<std::string> EmitReport(const std::string &out_dir) {
  const fs::path root(out_dir);
  const fs::path report = root / "report";
  std::vector<std::string> written;
  auto emit = [&](const fs::path &p) { written.push_back(p.string()); };

  if (fs::exists(root / "decode" / "wer_table.csv")) {
    const auto rows = ReadWerTable((root / "decode" / "wer_table.csv").string());
    WriteWerTableText((report / "wer_table.txt").string(), rows);
    emit(report / "wer_table.txt");
  }
  if (fs::exists(root / "grid" / "oracle_surface.csv")) {
    GridResult grid;
    grid.cells = ReadGridCsv((root / "grid" / "oracle_surface.csv").string());
    for (const auto &c : grid.cells) {
      auto it = grid.argmin.find(c.group);
      if (it == grid.argmin.end() || c.wer < it->second.wer) grid.argmin[c.group] = c;
    }
    if (fs::exists(root / "grid" / "oracle_baseline.csv"))
      for (const auto &r : ReadWerTable((root / "grid" / "oracle_baseline.csv").string()))
        grid.baseline_ss[r.test_group] = r.wer;
    WriteGridSummary((report / "oracle_grid.txt").string(), grid);
    emit(report / "oracle_grid.txt");
  }
  if (fs::exists(root / "grid" / "regressor_table.csv")) {
    const auto rows = ReadRegressorTable((root / "grid" / "regressor_table.csv").string());
    WriteRegressorTableText((report / "regressor_table.txt").string(), rows);
    emit(report / "regressor_table.txt");
  }
  if (written.empty())
    Fail(ErrorCode::kMissingDependency, "no result tables under " + out_dir + " to report");
  return written;
}

}  // namespace uwasr::experiments
