// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

// Oracle annotations (inline XML-like tags in Java sources), recall against
// the sum/product fragments of an oracle and three-level precision from
// human judgments.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fminer/metrics.hpp"
#include "fminer/patterns.hpp"

namespace fminer {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OracleTag { SimpleNestedLoop, DoubleNestedLoop, SimpleArithmetic, Matrix, Vector };

std::string_view to_string(OracleTag tag);
std::optional<OracleTag> parse_tag(std::string_view name);
/// Only the loop tags can mark a sum/product fragment.
bool is_loop_tag(OracleTag tag);

struct OracleAnnotation {
  OracleTag tag = OracleTag::SimpleNestedLoop;
  std::string file;  ///< key of the annotated file ("project/path")
  int start_line = 0;
  int end_line = 0;  ///< lines refer to the cleaned text
  bool sp = false;
  std::optional<std::size_t> parent;  ///< index of the enclosing annotation
};

/// A tag (or a whole tag-only line) removed from the annotated text,
/// positioned by its offset in the cleaned text.
struct TagEvent {
  std::size_t offset = 0;
  std::string text;
};

struct ParsedOracle {
  std::string clean_text;
  std::vector<OracleAnnotation> annotations;  ///< in order of opening tag
  std::vector<TagEvent> events;
};

/// Removes oracle tags. A line holding only tags and whitespace is removed
/// entirely; tags elsewhere are cut out. A tag is recognised only when the
/// character before `<` is not part of an identifier, so generics such as
/// `List<Vector>` stay code. Throws OracleError naming the line on unknown
/// closing tags, bad nesting, unclosed tags, or sp="true" on a non-loop tag.
ParsedOracle parse_oracle(std::string_view annotated, std::string_view file_key = {});

/// Inverse of parse_oracle: re-inserts every removed tag.
std::string reinsert_tags(const ParsedOracle& parsed);

struct RecallResult {
  std::uint64_t fragments = 0;  ///< sp-flagged annotations
  std::uint64_t hits = 0;       ///< sp fragments credited to some detection
  std::optional<Fraction> recall;
  std::vector<std::size_t> hit_indices;  ///< into the annotation list
};

/// A detection hits the outermost sp fragments of its file that share a
/// line with it; every fragment is credited at most once. Detections are
/// matched by "project/path" against OracleAnnotation::file.
RecallResult recall(std::span<const PatternMatch> detected,
                    std::span<const OracleAnnotation> oracle);

enum class Judgment { kNoFormula, kWrong, kCorrect, kComplete };

std::string_view to_string(Judgment j);
std::optional<Judgment> parse_judgment(std::string_view s);

struct PrecisionResult {
  std::uint64_t detections = 0;
  std::uint64_t formula_code = 0;  ///< wrong + correct + complete
  std::uint64_t correct = 0;       ///< correct + complete
  std::uint64_t complete = 0;
  std::optional<Fraction> any;
  std::optional<Fraction> correct_formula;
  std::optional<Fraction> complete_formula;
};

PrecisionResult precision(std::span<const Judgment> judgments);

/// Judges every detection via its id; throws OracleError listing every
/// unjudged id.
PrecisionResult precision(std::span<const PatternMatch> detected,
                          const std::map<std::string, Judgment>& judgments);

/// Parses a `match-id,judgment` CSV (optional header, `#` comments).
std::map<std::string, Judgment> parse_judgments(std::string_view csv);

/// Manifest of annotated files: one path per line relative to the oracle
/// root; blank lines and `#` comments skipped.
std::vector<std::string> parse_oracle_manifest(std::string_view text);

}  // namespace fminer
