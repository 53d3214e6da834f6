// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

#include "fminer/formula.hpp"

#include <algorithm>
#include <charconv>
#include <optional>

#include "fminer/text.hpp"

namespace fminer {

namespace {

NodePtr make(FormulaNode n) { return std::make_shared<const FormulaNode>(std::move(n)); }

std::optional<std::int64_t> int_literal(std::string_view s) {
  s = text::trim(s);
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s = text::trim(s.substr(1));
  }
  if (!s.empty() && (s.back() == 'L' || s.back() == 'l')) s.remove_suffix(1);
  if (s.empty() || s.front() < '0' || s.front() > '9') return std::nullopt;
  if (s.size() > 1 && s.front() == '0') return std::nullopt;  // octal/hex/binary
  std::string digits;
  for (char c : s) {
    if (c == '_') continue;
    if (c < '0' || c > '9') return std::nullopt;
    digits.push_back(c);
  }
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
  return negative ? -v : v;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !text::is_ident_start(s.front())) return false;
  for (char c : s) {
    if (!text::is_ident_char(c)) return false;
  }
  return true;
}

NodePtr leaf(const std::string& expr) {
  if (auto v = int_literal(expr)) return integer(*v);
  return raw(expr);
}

// Wraps an expression in parentheses when appending `-1` would bind into it.
NodePtr bound_operand(const std::string& expr) {
  const std::string masked = text::mask_literals(expr);
  for (const auto& o : text::top_level_binary_ops(masked)) {
    if (o.op != "+" && o.op != "-" && o.op != "*" && o.op != "/" && o.op != "%") {
      return raw("(" + expr + ")");
    }
  }
  return raw(expr);
}

NodePtr shifted(const std::string& expr, int delta) {
  if (auto v = int_literal(expr)) return integer(*v + delta);
  return binary(delta < 0 ? "-" : "+", bound_operand(expr), integer(delta < 0 ? -delta : delta), true);
}

// Descending loops with `>`/`>=` visit exp2(+1)..exp1, which is the same
// index set read upwards.
bool counts_down(const LoopLevel& level) {
  return level.descending && (level.rel == RelOp::kGt || level.rel == RelOp::kGe);
}

NodePtr lower_bound(const LoopLevel& level) {
  if (!counts_down(level)) return leaf(level.init);
  return level.rel == RelOp::kGe ? leaf(level.limit) : shifted(level.limit, 1);
}

NodePtr upper_bound(const LoopLevel& level) {
  if (counts_down(level)) return leaf(level.init);
  const bool inclusive = level.rel == RelOp::kLe || level.rel == RelOp::kGe;
  if (inclusive) return leaf(level.limit);
  return shifted(level.limit, -1);
}

NodePtr wrap_level(const LoopLevel& level, bool product, NodePtr body) {
  if (level.foreach) return big_op_over(product, level.binder, raw(level.collection), body);
  return big_op(product, level.binder, lower_bound(level), upper_bound(level), body);
}

NodePtr wrap_family(const LoopLevel& level, NodePtr body) {
  if (level.foreach) return family_over(level.binder, raw(level.collection), body);
  return family(level.binder, lower_bound(level), upper_bound(level), body);
}

std::size_t family_depth(PatternKind kind) {
  switch (kind) {
    case PatternKind::FIA:
    case PatternKind::FEC:
    case PatternKind::NFIAS:
    case PatternKind::NFECS:
      return 1;
    case PatternKind::NFIAA:
    case PatternKind::NFECC:
      return 2;
    default:
      return 0;
  }
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string text_of(const NodePtr& n) {
  switch (n->kind) {
    case NodeKind::kRaw:
      return n->text;
    case NodeKind::kInt:
      return std::to_string(n->value);
    case NodeKind::kSym:
      return n->initial ? n->text + "_0" : n->text;
    case NodeKind::kBinary: {
      const std::string l = text_of(n->children[0]);
      const std::string r = text_of(n->children[1]);
      return n->compact ? l + n->text + r : l + " " + n->text + " " + r;
    }
    case NodeKind::kReciprocal:
      return "1/(" + text_of(n->children[0]) + ")";
    case NodeKind::kBigOp:
    case NodeKind::kFamily: {
      std::string head = n->kind == NodeKind::kFamily ? "family(" : (n->product ? "prod(" : "sum(");
      if (n->over_collection) {
        return head + n->text + " in " + text_of(n->children[0]) + ", " +
               text_of(n->children[1]) + ")";
      }
      return head + n->text + "=" + text_of(n->children[0]) + ".." + text_of(n->children[1]) +
             ", " + text_of(n->children[2]) + ")";
    }
    case NodeKind::kAssign:
      return text_of(n->children[0]) + " = " + text_of(n->children[1]);
    case NodeKind::kVector: {
      std::vector<std::string> parts;
      for (const auto& c : n->children) parts.push_back(text_of(c));
      return "<" + join(parts, ", ") + ">";
    }
    case NodeKind::kInner:
      return "inner(" + text_of(n->children[0]) + ", " + text_of(n->children[1]) + ")";
  }
  return {};
}

std::string mo(std::string_view op) {
  if (op == "-") return "<mo>&#x2212;</mo>";
  if (op == "*") return "<mo>&#x22C5;</mo>";
  return "<mo>" + xml_escape(op) + "</mo>";
}

std::string mml_name(const std::string& name) {
  return is_identifier(name) ? "<mi>" + xml_escape(name) + "</mi>"
                             : "<mtext>" + xml_escape(name) + "</mtext>";
}

std::string mml(const NodePtr& n);

// Raw summands with a top-level + or - are parenthesised under Σ/Π.
std::string mml_body(const NodePtr& n) {
  if (n->kind == NodeKind::kRaw) {
    for (const auto& o : text::top_level_binary_ops(text::mask_literals(n->text))) {
      if (o.op == "+" || o.op == "-") {
        return "<mrow><mo>(</mo>" + mml(n) + "<mo>)</mo></mrow>";
      }
    }
  }
  return mml(n);
}

std::string mml(const NodePtr& n) {
  switch (n->kind) {
    case NodeKind::kRaw:
      return mml_name(n->text);
    case NodeKind::kInt:
      if (n->value < 0) {
        return "<mrow><mo>&#x2212;</mo><mn>" + std::to_string(-n->value) + "</mn></mrow>";
      }
      return "<mn>" + std::to_string(n->value) + "</mn>";
    case NodeKind::kSym:
      if (n->initial) return "<msub>" + mml_name(n->text) + "<mn>0</mn></msub>";
      return mml_name(n->text);
    case NodeKind::kBinary:
      return "<mrow>" + mml(n->children[0]) + mo(n->text) + mml(n->children[1]) + "</mrow>";
    case NodeKind::kReciprocal:
      return "<mfrac><mn>1</mn>" + mml(n->children[0]) + "</mfrac>";
    case NodeKind::kBigOp: {
      const std::string sym = n->product ? "<mo>&#x220F;</mo>" : "<mo>&#x2211;</mo>";
      if (n->over_collection) {
        return "<mrow><munder>" + sym + "<mrow>" + mml_name(n->text) + "<mo>&#x2208;</mo>" +
               mml(n->children[0]) + "</mrow></munder>" + mml_body(n->children[1]) + "</mrow>";
      }
      return "<mrow><munderover>" + sym + "<mrow>" + mml_name(n->text) + "<mo>=</mo>" +
             mml(n->children[0]) + "</mrow>" + mml(n->children[1]) + "</munderover>" +
             mml_body(n->children[2]) + "</mrow>";
    }
    case NodeKind::kFamily: {
      std::string sub;
      std::string body;
      if (n->over_collection) {
        sub = "<mrow>" + mml_name(n->text) + "<mo>&#x2208;</mo>" + mml(n->children[0]) + "</mrow>";
        body = mml(n->children[1]);
      } else {
        sub = "<mrow>" + mml_name(n->text) + "<mo>=</mo>" + mml(n->children[0]) +
              "<mo>,</mo><mo>&#x2026;</mo><mo>,</mo>" + mml(n->children[1]) + "</mrow>";
        body = mml(n->children[2]);
      }
      return "<msub><mrow><mo>(</mo>" + body + "<mo>)</mo></mrow>" + sub + "</msub>";
    }
    case NodeKind::kAssign:
      return "<mrow>" + mml(n->children[0]) + "<mo>=</mo>" + mml(n->children[1]) + "</mrow>";
    case NodeKind::kVector: {
      std::string rows;
      for (const auto& c : n->children) rows += "<mtr><mtd>" + mml(c) + "</mtd></mtr>";
      return "<mrow><mo>(</mo><mtable>" + rows + "</mtable><mo>)</mo></mrow>";
    }
    case NodeKind::kInner:
      return "<mrow><mo>&#x27E8;</mo>" + mml(n->children[0]) + "<mo>,</mo>" +
             mml(n->children[1]) + "<mo>&#x27E9;</mo></mrow>";
  }
  return {};
}

}  // namespace

NodePtr raw(std::string text) {
  FormulaNode n;
  n.kind = NodeKind::kRaw;
  n.text = std::move(text);
  return make(std::move(n));
}

NodePtr integer(std::int64_t value) {
  FormulaNode n;
  n.kind = NodeKind::kInt;
  n.value = value;
  return make(std::move(n));
}

NodePtr symbol(std::string name, bool initial) {
  FormulaNode n;
  n.kind = NodeKind::kSym;
  n.text = std::move(name);
  n.initial = initial;
  return make(std::move(n));
}

NodePtr binary(std::string op, NodePtr lhs, NodePtr rhs, bool compact) {
  FormulaNode n;
  n.kind = NodeKind::kBinary;
  n.text = std::move(op);
  n.compact = compact;
  n.children = {std::move(lhs), std::move(rhs)};
  return make(std::move(n));
}

NodePtr reciprocal(NodePtr denominator) {
  FormulaNode n;
  n.kind = NodeKind::kReciprocal;
  n.children = {std::move(denominator)};
  return make(std::move(n));
}

NodePtr big_op(bool product, std::string binder, NodePtr lower, NodePtr upper, NodePtr body) {
  FormulaNode n;
  n.kind = NodeKind::kBigOp;
  n.product = product;
  n.text = std::move(binder);
  n.children = {std::move(lower), std::move(upper), std::move(body)};
  return make(std::move(n));
}

NodePtr big_op_over(bool product, std::string binder, NodePtr collection, NodePtr body) {
  FormulaNode n;
  n.kind = NodeKind::kBigOp;
  n.product = product;
  n.over_collection = true;
  n.text = std::move(binder);
  n.children = {std::move(collection), std::move(body)};
  return make(std::move(n));
}

NodePtr family(std::string binder, NodePtr lower, NodePtr upper, NodePtr body) {
  FormulaNode n;
  n.kind = NodeKind::kFamily;
  n.text = std::move(binder);
  n.children = {std::move(lower), std::move(upper), std::move(body)};
  return make(std::move(n));
}

NodePtr family_over(std::string binder, NodePtr collection, NodePtr body) {
  FormulaNode n;
  n.kind = NodeKind::kFamily;
  n.over_collection = true;
  n.text = std::move(binder);
  n.children = {std::move(collection), std::move(body)};
  return make(std::move(n));
}

NodePtr assign(NodePtr target, NodePtr value) {
  FormulaNode n;
  n.kind = NodeKind::kAssign;
  n.children = {std::move(target), std::move(value)};
  return make(std::move(n));
}

NodePtr vector_of(std::vector<NodePtr> components) {
  FormulaNode n;
  n.kind = NodeKind::kVector;
  n.children = std::move(components);
  return make(std::move(n));
}

NodePtr inner(NodePtr lhs, NodePtr rhs) {
  FormulaNode n;
  n.kind = NodeKind::kInner;
  n.children = {std::move(lhs), std::move(rhs)};
  return make(std::move(n));
}

Formula reconstruct(const PatternMatch& match) {
  Formula f;
  const CapturedRoles& r = match.roles;

  if (match.kind == PatternKind::VEC_DOT || match.kind == PatternKind::VEC_ADD) {
    if (!r.vector) return f;
    const VectorSlots& v = *r.vector;
    NodePtr a = vector_of({raw(v.operands[0][0]), raw(v.operands[0][1])});
    NodePtr b = vector_of({raw(v.operands[1][0]), raw(v.operands[1][1])});
    if (match.kind == PatternKind::VEC_DOT) {
      f.root = assign(raw(v.targets.at(0)), inner(a, b));
    } else {
      f.root = assign(vector_of({raw(v.targets.at(0)), raw(v.targets.at(1))}), binary("+", a, b));
    }
    return f;
  }
  if (is_loop_counter(match.kind) || r.levels.empty() || !r.op) return f;

  for (const auto& level : r.levels) {
    if (level.foreach) continue;
    if (counts_down(level)) {
      f.notes.push_back("descending loop");
      continue;
    }
    switch (level.rel) {
      case RelOp::kLt:
        break;
      case RelOp::kLe:
        f.notes.push_back("inclusive upper bound");
        break;
      default:
        f.approximate = true;
        f.notes.push_back("approximate: loop condition " + level.binder + " " +
                          std::string(to_string(level.rel)) + " " + level.limit);
        break;
    }
  }

  const AccuOp op = *r.op;
  const bool product = op == AccuOp::kMul || op == AccuOp::kDiv;
  const std::string outer_op = op == AccuOp::kAdd ? "+" : op == AccuOp::kSub ? "-" : "*";
  const std::size_t families = std::min(family_depth(match.kind), r.levels.size());

  NodePtr term = op == AccuOp::kDiv ? reciprocal(raw(r.exp3)) : raw(r.exp3);
  for (std::size_t k = r.levels.size(); k > families; --k) {
    term = wrap_level(r.levels[k - 1], product, term);
  }

  if (families == 0) {
    f.root = assign(symbol(r.accu), binary(outer_op, symbol(r.accu, true), term));
    return f;
  }
  NodePtr body = binary(outer_op, symbol(r.accu), term);
  for (std::size_t k = families; k > 0; --k) body = wrap_family(r.levels[k - 1], body);
  f.root = body;
  return f;
}

std::string render_text(const Formula& f) {
  if (!f.root) return {};
  std::string out = text_of(f.root);
  if (!f.notes.empty()) out += " [" + join(f.notes, "; ") + "]";
  return out;
}

std::string render_mathml(const Formula& f) {
  if (!f.root) return {};
  std::string out = "<math xmlns=\"http://www.w3.org/1998/Math/MathML\"><mrow>";
  out += mml(f.root);
  if (!f.notes.empty()) {
    out += "<mspace width=\"1em\"/><mtext>[" + xml_escape(join(f.notes, "; ")) + "]</mtext>";
  }
  out += "</mrow></math>";
  return out;
}

FormulaRecord make_record(const PatternMatch& match) {
  FormulaRecord rec;
  rec.match_id = match.id();
  rec.formula = reconstruct(match);
  rec.text = render_text(rec.formula);
  rec.mathml = render_mathml(rec.formula);
  return rec;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default:
        // control characters other than tab/newline/CR are not XML
        if (static_cast<unsigned char>(c) < 0x20 && c != '\t' && c != '\n' && c != '\r') {
          out.push_back('?');
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

}  // namespace fminer
