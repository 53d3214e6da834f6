// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

// Per-match CSV and the scan summary.

#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fminer/formula.hpp"
#include "fminer/metrics.hpp"
#include "fminer/patterns.hpp"

namespace fminer {

struct CsvRow {
  std::string project;
  std::string file;
  PatternKind kind = PatternKind::FIS;
  int start_line = 0;
  int end_line = 0;
  std::string snippet;
  std::string formula;
  std::string mathml;

  friend bool operator==(const CsvRow&, const CsvRow&) = default;
};

inline constexpr std::string_view kCsvHeader =
    "project,file,pattern,start_line,end_line,snippet,formula,mathml";

CsvRow make_row(const PatternMatch& match, const FormulaRecord& record);

/// Quotes a field when it contains a comma, quote, CR or LF; embedded
/// quotes are doubled.
std::string csv_quote(std::string_view field);

/// Writes the header and the rows sorted by (project, file, start line,
/// kind) with LF line endings. Returns the number of data rows. Throws
/// std::runtime_error if the stream fails.
std::size_t emit_csv(std::vector<CsvRow> rows, std::ostream& out);

/// Parses CSV written by emit_csv (header required).
std::vector<CsvRow> read_csv(std::string_view text);

struct SummaryInput {
  ScanTotals totals;
  DensityReport densities;
  LoopFractions loops;
};

/// Corpus totals and densities, per-pattern lines, loop fractions and a block of
/// `key=value` lines. Undefined densities print as "undefined".
void emit_summary(const SummaryInput& in, std::ostream& out);

}  // namespace fminer
