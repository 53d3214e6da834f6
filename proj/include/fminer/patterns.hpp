// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

// Syntactic patterns for sum/product formula code, the two experimental
// vector patterns and the general loop counters.
//
// Matching combines a balanced-bracket scanner (loop headers, bodies and
// statement boundaries) with compiled regular expressions for the leaves:
// loop-header clauses, the accumulation statement and vector assignments.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fminer/corpus.hpp"

namespace fminer {

enum class PatternKind {
  FIS,    ///< for-loop, sum/product
  FES,    ///< foreach-loop, sum/product
  FIA,    ///< for-loop, array of results
  FEC,    ///< foreach-loop, array/collection of results
  NFISS,  ///< nested for-loops, sum/product of sums/products
  NFESS,  ///< nested foreach-loops, sum/product of sums/products
  NFIAS,  ///< nested for-loops, array of sums/products
  NFECS,  ///< nested foreach-loops, array/collection of sums/products
  NFIAA,  ///< nested for-loops, array of arrays
  NFECC,  ///< nested foreach-loops, array/collection of arrays/collections
  VEC_ADD,
  VEC_DOT,
  LOOP_SIMPLE,
  LOOP_NESTED,
};

inline constexpr std::array<PatternKind, 14> kAllKinds = {
    PatternKind::FIS,     PatternKind::FES,        PatternKind::FIA,
    PatternKind::FEC,     PatternKind::NFISS,      PatternKind::NFESS,
    PatternKind::NFIAS,   PatternKind::NFECS,      PatternKind::NFIAA,
    PatternKind::NFECC,   PatternKind::VEC_ADD,    PatternKind::VEC_DOT,
    PatternKind::LOOP_SIMPLE, PatternKind::LOOP_NESTED};

std::string_view to_string(PatternKind kind);
/// Accepts the canonical names (case-insensitive) and "FEA" as an alias of
/// FEC.
std::optional<PatternKind> parse_kind(std::string_view name);

bool is_nested(PatternKind kind);
/// Sum/product formula kinds: everything except the loop counters.
bool is_sp(PatternKind kind);
bool is_experimental(PatternKind kind);
bool is_loop_counter(PatternKind kind);
bool is_foreach_kind(PatternKind kind);

/// The ten loop-based SP kinds plus both loop counters.
std::set<PatternKind> default_kinds();

enum class RelOp { kLt, kLe, kGt, kGe, kNe };
std::string_view to_string(RelOp op);

enum class AccuOp { kAdd, kSub, kMul, kDiv };
char symbol(AccuOp op);

/// One loop of a matched nest. Counting loops fill binder/init/limit/rel/
/// increment; foreach loops fill binder/collection.
struct LoopLevel {
  bool foreach = false;
  std::string binder;      ///< index (counting) or entry/elem (foreach)
  std::string init;        ///< exp1 of a counting loop
  std::string limit;       ///< exp2 of a counting loop
  RelOp rel = RelOp::kLt;
  std::string increment;   ///< increment clause as written
  bool descending = false; ///< counts down (`i--`, `i -= 1`)
  std::string collection;  ///< iterated expression of a foreach loop

  friend bool operator==(const LoopLevel&, const LoopLevel&) = default;
};

/// Vector-pattern slots: `operands[i][j]` is the j-th component of the i-th
/// operand vector, i.e. exp_{i+1,j+1}.
struct VectorSlots {
  std::vector<std::string> targets;  ///< var (scalar product) or var1, var2
  std::array<std::array<std::string, 2>, 2> operands;

  friend bool operator==(const VectorSlots&, const VectorSlots&) = default;
};

struct CapturedRoles {
  std::vector<LoopLevel> levels;  ///< outermost first
  std::string accu;               ///< accumulator lvalue
  std::optional<AccuOp> op;
  std::string exp3;               ///< accumulated term
  std::string accumulation;       ///< the accumulation statement as written
  bool compound_assignment = false;
  /// Loop-nest blocks: for a nest of depth d the order is
  /// pre_1 .. pre_d, post_d .. post_1 (so block1..block4 for depth 2).
  std::vector<std::string> blocks;
  std::optional<VectorSlots> vector;

  [[nodiscard]] std::vector<std::string> index_vars() const;

  friend bool operator==(const CapturedRoles&, const CapturedRoles&) = default;
};

struct PatternMatch {
  PatternKind kind = PatternKind::FIS;
  std::string project;
  std::string path;
  int start_line = 0;
  int end_line = 0;
  std::size_t begin = 0;  ///< byte offset of the match in the stripped text
  std::size_t end = 0;
  std::string snippet;
  CapturedRoles roles;

  [[nodiscard]] std::string id() const;
};

/// All occurrences of `kind` in `unit`, ascending by start line. Every loop
/// yields at most one match per kind; loop nests yield at most one nested
/// match, anchored at the outermost loop that forms a valid nest.
std::vector<PatternMatch> match_kind(PatternKind kind, const SourceUnit& unit);

/// Union of match_kind over `enabled`, ordered by (start line, kind).
std::vector<PatternMatch> match_all(const SourceUnit& unit,
                                    const std::set<PatternKind>& enabled);

/// Drops every non-nested SP match whose line span shares a line with a
/// nested SP match. Nested and loop-counter matches are always kept.
std::vector<PatternMatch> resolve_precedence(std::vector<PatternMatch> matches);

struct CatalogEntry {
  PatternKind kind;
  std::string_view description;
  std::string_view shape;
  std::string_view slots;
};

const std::vector<CatalogEntry>& pattern_catalog();

}  // namespace fminer
