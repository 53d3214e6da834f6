// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

// Exact-rational density metrics, recall-corrected estimates and loop
// fractions over a scan.

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fminer/patterns.hpp"

namespace fminer {

class MetricsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reduced fraction num/den with den > 0.
class Fraction {
 public:
  Fraction() = default;
  Fraction(std::int64_t num, std::int64_t den = 1);  // NOLINT(google-explicit-constructor)

  /// Parses "0.3091", "30.91%", "3/7" or an integer.
  static Fraction parse(std::string_view s);

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }
  [[nodiscard]] double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend Fraction operator-(const Fraction& a, const Fraction& b);
  friend Fraction operator*(const Fraction& a, const Fraction& b);
  friend Fraction operator/(const Fraction& a, const Fraction& b);
  friend bool operator==(const Fraction& a, const Fraction& b) = default;
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// num/den; throws MetricsError when den is zero.
Fraction density(std::uint64_t num, std::uint64_t den);

/// rho / recall; throws MetricsError unless 0 < recall <= 1.
Fraction estimate(Fraction rho, Fraction recall);

/// Percentage display: "0%" for zero, two decimals from 0.1% up
/// ("6.04%"), two significant digits below ("0.043%"). Rounds half up.
std::string format_percent(Fraction f);

/// The exact value that format_percent displays, as a fraction of one.
Fraction displayed_value(Fraction f);

struct PatternTotals {
  std::uint64_t matches = 0;
  std::uint64_t lofc = 0;

  friend bool operator==(const PatternTotals&, const PatternTotals&) = default;
};

/// Per-file analysis outcome fed to aggregate().
struct FileResult {
  std::string project;
  std::string path;
  std::uint64_t loc = 0;
  /// Accepted SP matches after precedence resolution.
  std::vector<PatternMatch> accepted;
  std::uint64_t loops_simple = 0;
  std::uint64_t loops_nested = 0;
};

struct ScanTotals {
  std::uint64_t projects = 0;
  std::uint64_t nonempty_projects = 0;
  std::uint64_t fc_projects = 0;
  std::uint64_t files = 0;
  std::uint64_t fc_files = 0;
  std::uint64_t loc = 0;
  std::uint64_t lofc = 0;
  std::uint64_t matches = 0;
  std::map<PatternKind, PatternTotals> per_pattern;
  std::uint64_t loops_simple = 0;
  std::uint64_t loops_nested = 0;
  /// Accepted matches of the single-loop kinds (FIS/FES/FIA/FEC).
  std::uint64_t sp_simple = 0;
  /// Accepted matches of the nested-loop kinds.
  std::uint64_t sp_nested = 0;

  friend bool operator==(const ScanTotals&, const ScanTotals&) = default;
};

/// Sum over `files`. `projects` lists every project of the scan, including
/// projects without Java files.
ScanTotals aggregate(std::span<const FileResult> files, std::span<const std::string> projects);

/// Lines covered by the union of the matches' line spans.
std::uint64_t covered_lines(std::span<const PatternMatch> matches);

struct DensityReport {
  std::optional<Fraction> rho_files;
  std::optional<Fraction> rho_loc;
  std::optional<Fraction> rho_files_est;
  std::optional<Fraction> rho_loc_est;
  Fraction recall{1};
};

/// Densities of `totals`; a density with a zero denominator stays empty.
DensityReport densities(const ScanTotals& totals, Fraction recall);

struct LoopFractions {
  std::optional<Fraction> simple;
  std::optional<Fraction> nested;
  std::optional<Fraction> simple_est;
  std::optional<Fraction> nested_est;
};

LoopFractions loop_fractions(const ScanTotals& totals, Fraction recall);

}  // namespace fminer
