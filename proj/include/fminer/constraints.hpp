// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

// Variable-role constraints that separate formula code from loops that
// merely look like sums or products.
//
// Constraint ids per family:
//   FIS/FES/FIA/FEC    C1..C5   (accumulator, bound and write constraints)
//   NFISS/NFIAS/NFIAA  N1..N6   (C1..C5 per level plus cross-level writes)
//   NFESS/NFECS/NFECC  E1..E5   (nested foreach; E5 guards the accumulator)
//   VEC_DOT            V1, V2
//   VEC_ADD            V1..V5

#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fminer/patterns.hpp"

namespace fminer {

using SymbolSet = std::set<std::string>;

/// Identifiers occurring in `expr`. Method names (an identifier followed by
/// `(`), member names after a dot, keywords and literal contents are
/// excluded; `this.x` contributes `x`.
SymbolSet vars(std::string_view expr);
SymbolSet vars(std::span<const std::string> exprs);

/// Base identifiers of every assignment target (plain and compound), of
/// every `++`/`--` operand and of every initialised declaration in `block`.
SymbolSet writes(std::string_view block);
SymbolSet writes(std::span<const std::string> blocks);

/// Leading identifier of an lvalue: `a[i].b` -> `a`, `this.x[k]` -> `x`.
std::string base_identifier(std::string_view lvalue);

struct Verdict {
  std::string id;
  bool pass = true;
  SymbolSet offending;
  std::string note;
};

struct ConstraintReport {
  std::string match_id;
  std::vector<Verdict> verdicts;

  [[nodiscard]] bool accepted() const;
  [[nodiscard]] const Verdict* find(std::string_view id) const;
  [[nodiscard]] std::vector<std::string> failed_ids() const;
};

/// Constraint ids evaluated for `kind`, in evaluation order. Empty for the
/// loop counters.
std::vector<std::string_view> constraint_ids(PatternKind kind);

ConstraintReport check_for_sum(const CapturedRoles& roles);
ConstraintReport check_nested_for(const CapturedRoles& roles);
ConstraintReport check_nested_foreach(const CapturedRoles& roles);
ConstraintReport check_vector(const CapturedRoles& roles, PatternKind kind);

/// Dispatches on the match kind and fills in the match id.
ConstraintReport check(const PatternMatch& match);

/// Vector component helpers: recognise `.x/.y`, `.getX()/.getY()`,
/// `.get(0)/.get(1)`, `e[k]` and name suffixes `x/y/X/Y/0/1`.
std::optional<std::string> source(std::string_view component);
std::optional<int> index(std::string_view component);

}  // namespace fminer
