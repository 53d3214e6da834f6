// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

// Scan and evaluation drivers: discovery, parallel per-file analysis and an
// ordered merge.

#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fminer/constraints.hpp"
#include "fminer/corpus.hpp"
#include "fminer/evaluation.hpp"
#include "fminer/metrics.hpp"
#include "fminer/patterns.hpp"
#include "fminer/reporting.hpp"

namespace fminer {

inline const Fraction kDefaultRecall{3091, 10000};

struct ScanConfig {
  std::vector<std::filesystem::path> roots;
  std::set<PatternKind> enabled = default_kinds();
  Fraction recall = kDefaultRecall;
  unsigned workers = 1;
  bool dedup = false;
  /// Treat every root as a single project instead of one project per
  /// immediate subdirectory.
  bool root_is_project = false;
};

/// Outcome of analysing one unit.
struct FileAnalysis {
  FileResult result;
  std::vector<CsvRow> rows;
  /// One line per rejected SP match: id and failing constraints.
  std::vector<std::string> rejections;
};

FileAnalysis analyze_unit(const SourceUnit& unit, const std::set<PatternKind>& enabled);

/// "C5 {pixel}; C3 {s}" style rendering of the failed verdicts.
std::string describe_failures(const ConstraintReport& report);

struct ScanInput {
  std::filesystem::path file;
  std::string project;
  std::string relative_path;
};

/// Maps `relative` (a '/'-separated path below a root) to (project, path in
/// project): the first component names the project when there is more than
/// one component, otherwise `root_name` does.
std::pair<std::string, std::string> split_project(const std::string& relative,
                                                  const std::string& root_name);

struct ScanResult {
  std::vector<std::string> projects;
  std::vector<FileResult> files;
  std::vector<CsvRow> rows;
  std::vector<std::string> rejections;
  ScanTotals totals;
  Diagnostics diagnostics;
};

/// Runs `fn(i)` for i in [0, n) on `workers` threads.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

/// Throws CorpusError when a root cannot be read. Output does not depend on
/// the worker count.
ScanResult run_scan(const ScanConfig& config);

struct EvalResult {
  std::vector<OracleAnnotation> annotations;
  std::vector<PatternMatch> detected;  ///< accepted SP matches after precedence
  RecallResult recall;
  std::optional<PrecisionResult> precision;
};

/// Parses the annotated files listed in `manifest` (relative to `root`),
/// scans their cleaned text and computes recall, plus precision when
/// judgments are supplied.
EvalResult run_eval(const std::filesystem::path& root, const std::filesystem::path& manifest,
                    const std::optional<std::filesystem::path>& judgments,
                    const std::set<PatternKind>& enabled = default_kinds());

}  // namespace fminer
