// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

// Formula trees built from accepted matches, with a linear text rendering
// and a presentation-MathML rendering. Source expressions stay opaque: a
// leaf is either raw source text or an integer literal.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fminer/patterns.hpp"

namespace fminer {

enum class NodeKind {
  kRaw,         ///< opaque source expression
  kInt,         ///< integer literal
  kSym,         ///< identifier (binder or accumulator), optionally with subscript 0
  kBinary,      ///< children: lhs, rhs; text: operator
  kReciprocal,  ///< children: denominator
  kBigOp,       ///< Σ or Π; children: lower, upper, body or collection, body
  kFamily,      ///< indexed family; children like kBigOp
  kAssign,      ///< children: target, value
  kVector,      ///< column vector; children: components
  kInner,       ///< scalar product; children: two vectors
};

struct FormulaNode;
using NodePtr = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  NodeKind kind = NodeKind::kRaw;
  std::string text;           ///< raw text, symbol, operator or binder
  std::int64_t value = 0;     ///< kInt
  bool initial = false;       ///< kSym: value before the loop (subscript 0)
  bool product = false;       ///< kBigOp: Π instead of Σ
  bool over_collection = false;  ///< kBigOp/kFamily: binder ranges over a collection
  bool compact = false;       ///< kBinary: bound arithmetic, rendered without spaces
  std::vector<NodePtr> children;
};

NodePtr raw(std::string text);
NodePtr integer(std::int64_t value);
NodePtr symbol(std::string name, bool initial = false);
NodePtr binary(std::string op, NodePtr lhs, NodePtr rhs, bool compact = false);
NodePtr reciprocal(NodePtr denominator);
NodePtr big_op(bool product, std::string binder, NodePtr lower, NodePtr upper, NodePtr body);
NodePtr big_op_over(bool product, std::string binder, NodePtr collection, NodePtr body);
NodePtr family(std::string binder, NodePtr lower, NodePtr upper, NodePtr body);
NodePtr family_over(std::string binder, NodePtr collection, NodePtr body);
NodePtr assign(NodePtr target, NodePtr value);
NodePtr vector_of(std::vector<NodePtr> components);
NodePtr inner(NodePtr lhs, NodePtr rhs);

struct Formula {
  NodePtr root;
  /// Set for bounds other than `<`/`<=`; the rendered range assumes an
  /// ascending loop.
  bool approximate = false;
  /// Printed after the formula, e.g. "inclusive upper bound".
  std::vector<std::string> notes;
};

/// Instantiates the formula template of an accepted SP match. Loop counters
/// yield an empty formula (null root).
Formula reconstruct(const PatternMatch& match);

std::string render_text(const Formula& f);
std::string render_mathml(const Formula& f);

struct FormulaRecord {
  std::string match_id;
  Formula formula;
  std::string text;
  std::string mathml;
};

FormulaRecord make_record(const PatternMatch& match);

/// Escapes &, <, >, " and ' for XML text and attribute content.
std::string xml_escape(std::string_view s);

}  // namespace fminer
