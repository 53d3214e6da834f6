// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

#include "fminer/constraints.hpp"

#include <algorithm>
#include <iterator>
#include <regex>

#include "fminer/text.hpp"

namespace fminer {

namespace {

std::size_t skip_ws_back(std::string_view m, std::size_t p) {
  // returns one past the last non-space char before p
  while (p > 0 && text::is_space(m[p - 1])) --p;
  return p;
}

std::size_t skip_ws(std::string_view m, std::size_t p) {
  while (p < m.size() && text::is_space(m[p])) ++p;
  return p;
}

// Start of the lvalue that ends right before `end`: walks back over
// subscripts, identifiers and member dots.
std::size_t lvalue_start(std::string_view m, std::size_t end) {
  std::size_t p = skip_ws_back(m, end);
  std::size_t start = p;
  while (p > 0) {
    if (m[p - 1] == ']') {
      const std::size_t open = text::find_opening(m, p - 1);
      if (open == std::string_view::npos) break;
      p = skip_ws_back(m, open);
      continue;
    }
    if (!text::is_ident_char(m[p - 1])) break;
    while (p > 0 && text::is_ident_char(m[p - 1])) --p;
    start = p;
    const std::size_t q = skip_ws_back(m, p);
    if (q > 0 && m[q - 1] == '.') {
      p = skip_ws_back(m, q - 1);
      continue;
    }
    break;
  }
  return start;
}

void add_base(SymbolSet& out, std::string_view lvalue) {
  std::string base = base_identifier(lvalue);
  if (!base.empty() && !text::is_java_keyword(base) &&
      !(base[0] >= '0' && base[0] <= '9')) {
    out.insert(std::move(base));
  }
}

SymbolSet set_union(const SymbolSet& a, const SymbolSet& b) {
  SymbolSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

SymbolSet intersection(const SymbolSet& a, const SymbolSet& b) {
  SymbolSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
  return out;
}

Verdict not_in(std::string id, const std::string& symbol, const SymbolSet& set) {
  Verdict v{std::move(id), true, {}, {}};
  if (!symbol.empty() && set.count(symbol)) {
    v.pass = false;
    v.offending.insert(symbol);
  }
  return v;
}

Verdict disjoint(std::string id, const SymbolSet& a, const SymbolSet& b) {
  Verdict v{std::move(id), true, intersection(a, b), {}};
  v.pass = v.offending.empty();
  return v;
}

// vars() of a bound expression with `base.length` occurrences removed; an
// element-wise update of `base` never changes its length.
SymbolSet vars_ignoring_length(std::string_view expr, const std::string& base) {
  if (base.empty()) return vars(expr);
  const std::regex re("(^|[^\\w$.])" + base + "\\s*\\.\\s*length\\b");
  return vars(std::regex_replace(std::string(expr), re, "$1 0"));
}

std::vector<std::string> range_of(const std::vector<std::string>& blocks,
                                  std::size_t from, std::size_t to) {
  std::vector<std::string> out;
  for (std::size_t k = from; k < to && k < blocks.size(); ++k) out.push_back(blocks[k]);
  return out;
}

// Blocks inside loop level `k` (0-based) of a nest with depth `d`:
// pre_k..pre_{d-1} and post_{d-1}..post_k.
std::vector<std::string> blocks_within(const CapturedRoles& roles, std::size_t k) {
  const std::size_t d = roles.levels.size();
  std::vector<std::string> out;
  for (std::size_t j = k; j < d; ++j) {
    if (j < roles.blocks.size()) out.push_back(roles.blocks[j]);
    const std::size_t post = 2 * d - 1 - j;
    if (post < roles.blocks.size()) out.push_back(roles.blocks[post]);
  }
  return out;
}

// Blocks that belong to the outer levels only (everything but the
// innermost pre/post pair).
std::vector<std::string> outer_blocks(const CapturedRoles& roles) {
  const std::size_t d = roles.levels.size();
  std::vector<std::string> out;
  for (std::size_t j = 0; j + 1 < d; ++j) {
    if (j < roles.blocks.size()) out.push_back(roles.blocks[j]);
    const std::size_t post = 2 * d - 1 - j;
    if (post < roles.blocks.size()) out.push_back(roles.blocks[post]);
  }
  return out;
}

const std::string& bound_of(const LoopLevel& level) {
  return level.foreach ? level.collection : level.limit;
}

}  // namespace

SymbolSet vars(std::string_view expr) {
  const std::string m = text::mask_literals(expr);
  SymbolSet out;
  std::size_t i = 0;
  while (i < m.size()) {
    const char c = m[i];
    if (c >= '0' && c <= '9') {
      // numeric literal with hex digits, suffixes and signed exponents
      const std::size_t start = i;
      const bool hex = i + 1 < m.size() && c == '0' && (m[i + 1] == 'x' || m[i + 1] == 'X');
      while (i < m.size()) {
        const char d = m[i];
        const bool exp_sign = (d == '+' || d == '-') && !hex && i > start &&
                              (m[i - 1] == 'e' || m[i - 1] == 'E');
        if (!text::is_ident_char(d) && d != '.' && !exp_sign) break;
        ++i;
      }
      continue;
    }
    if (c == '.' && i + 1 < m.size() && m[i + 1] >= '0' && m[i + 1] <= '9') {
      ++i;
      while (i < m.size() && text::is_ident_char(m[i])) ++i;
      continue;
    }
    if (!text::is_ident_start(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < m.size() && text::is_ident_char(m[i])) ++i;
    const std::string_view word = std::string_view(m).substr(start, i - start);
    if (text::is_java_keyword(word) || word == "true" || word == "false" || word == "null") {
      continue;
    }
    const std::size_t after = skip_ws(m, i);
    if (after < m.size() && m[after] == '(') continue;  // method name
    const std::size_t before = skip_ws_back(m, start);
    if (before > 0 && m[before - 1] == '.') {
      // member selection: only `this.x` / `super.x` contribute x
      const std::size_t q = skip_ws_back(m, before - 1);
      std::size_t w = q;
      while (w > 0 && text::is_ident_char(m[w - 1])) --w;
      const std::string_view recv = std::string_view(m).substr(w, q - w);
      const std::size_t ww = skip_ws_back(m, w);
      const bool qualified = ww > 0 && m[ww - 1] == '.';
      if ((recv == "this" || recv == "super") && !qualified) out.insert(std::string(word));
      continue;
    }
    out.insert(std::string(word));
  }
  return out;
}

SymbolSet vars(std::span<const std::string> exprs) {
  SymbolSet out;
  for (const auto& e : exprs) {
    SymbolSet v = vars(e);
    out.insert(v.begin(), v.end());
  }
  return out;
}

std::string base_identifier(std::string_view lvalue) {
  std::size_t p = skip_ws(lvalue, 0);
  auto ident = [&]() {
    const std::size_t s = p;
    while (p < lvalue.size() && text::is_ident_char(lvalue[p])) ++p;
    return lvalue.substr(s, p - s);
  };
  std::string_view first = ident();
  if (first == "this" || first == "super") {
    std::size_t q = skip_ws(lvalue, p);
    if (q < lvalue.size() && lvalue[q] == '.') {
      p = skip_ws(lvalue, q + 1);
      first = ident();
    }
  }
  return std::string(first);
}

SymbolSet writes(std::string_view block) {
  const std::string m = text::mask_literals(block);
  const std::string_view mv = m;
  SymbolSet out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const char c = m[i];
    if (c == '=') {
      if (i + 1 < m.size() && m[i + 1] == '=') {
        ++i;  // ==
        continue;
      }
      std::size_t op_start = i;
      const char prev = i > 0 ? m[i - 1] : '\0';
      if (prev == '!' || prev == '=') continue;
      if (prev == '<') {
        if (i >= 2 && m[i - 2] == '<') {
          op_start = i - 2;  // <<=
        } else {
          continue;  // <=
        }
      } else if (prev == '>') {
        std::size_t k = i - 1;
        while (k > 0 && m[k - 1] == '>') --k;
        const std::size_t run = i - k;
        if (run < 2) continue;  // >=
        op_start = k;           // >>= or >>>=
      } else if (prev == '+' || prev == '-' || prev == '*' || prev == '/' ||
                 prev == '%' || prev == '&' || prev == '|' || prev == '^') {
        op_start = i - 1;
      }
      const std::size_t s = lvalue_start(mv, op_start);
      const std::size_t e = skip_ws_back(mv, op_start);
      if (s < e) add_base(out, block.substr(s, e - s));
      continue;
    }
    if ((c == '+' || c == '-') && i + 1 < m.size() && m[i + 1] == c) {
      const std::size_t after = skip_ws(mv, i + 2);
      const std::size_t before = skip_ws_back(mv, i);
      const bool postfix = before > 0 && (text::is_ident_char(m[before - 1]) || m[before - 1] == ']');
      if (postfix) {
        const std::size_t s = lvalue_start(mv, i);
        if (s < before) add_base(out, block.substr(s, before - s));
      } else if (after < m.size() && text::is_ident_start(m[after])) {
        add_base(out, block.substr(after));
      }
      ++i;
    }
  }
  return out;
}

SymbolSet writes(std::span<const std::string> blocks) {
  SymbolSet out;
  for (const auto& b : blocks) {
    SymbolSet w = writes(b);
    out.insert(w.begin(), w.end());
  }
  return out;
}

bool ConstraintReport::accepted() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

const Verdict* ConstraintReport::find(std::string_view id) const {
  for (const auto& v : verdicts) {
    if (v.id == id) return &v;
  }
  return nullptr;
}

std::vector<std::string> ConstraintReport::failed_ids() const {
  std::vector<std::string> out;
  for (const auto& v : verdicts) {
    if (!v.pass) out.push_back(v.id);
  }
  return out;
}

std::vector<std::string_view> constraint_ids(PatternKind kind) {
  switch (kind) {
    case PatternKind::FIS:
    case PatternKind::FES:
    case PatternKind::FIA:
    case PatternKind::FEC:
      return {"C1", "C2", "C3", "C4", "C5"};
    case PatternKind::NFISS:
    case PatternKind::NFIAS:
    case PatternKind::NFIAA:
      return {"N1", "N2", "N3", "N4", "N5", "N6"};
    case PatternKind::NFESS:
    case PatternKind::NFECS:
    case PatternKind::NFECC:
      return {"E1", "E2", "E3", "E4", "E5"};
    case PatternKind::VEC_DOT:
      return {"V1", "V2"};
    case PatternKind::VEC_ADD:
      return {"V1", "V2", "V3", "V4", "V5"};
    case PatternKind::LOOP_SIMPLE:
    case PatternKind::LOOP_NESTED:
      return {};
  }
  return {};
}

ConstraintReport check_for_sum(const CapturedRoles& roles) {
  ConstraintReport r;
  if (roles.levels.empty()) return r;
  const LoopLevel& level = roles.levels.front();
  const std::string& exp2 = bound_of(level);
  const std::string accu = base_identifier(roles.accu);
  const bool array_accu = roles.accu.find('[') != std::string::npos;

  const SymbolSet vars_exp2 = vars(exp2);
  const SymbolSet vars_exp3 = vars(roles.exp3);
  const SymbolSet w_blocks = writes(roles.blocks);
  const SymbolSet w_exprs = set_union(writes(exp2), writes(roles.exp3));

  SymbolSet c1_set = set_union(array_accu ? vars_ignoring_length(exp2, accu) : vars_exp2, vars_exp3);
  r.verdicts.push_back(not_in("C1", accu, c1_set));
  r.verdicts.push_back(not_in("C2", level.binder, vars_exp2));
  r.verdicts.push_back(not_in("C3", accu, w_blocks));
  r.verdicts.push_back(not_in("C4", level.binder, set_union(w_blocks, writes(roles.exp3))));
  r.verdicts.push_back(disjoint("C5", set_union(vars_exp2, vars_exp3), set_union(w_blocks, w_exprs)));
  return r;
}

ConstraintReport check_nested_for(const CapturedRoles& roles) {
  ConstraintReport r;
  const std::size_t d = roles.levels.size();
  if (d == 0) return r;
  const std::string accu = base_identifier(roles.accu);
  const bool array_accu = roles.accu.find('[') != std::string::npos;
  const LoopLevel& inner = roles.levels.back();

  // N1: the accumulator stays out of every bound and of exp3
  SymbolSet bounds_vars = vars(roles.exp3);
  for (std::size_t k = 0; k < d; ++k) {
    const auto& l = roles.levels[k];
    auto v = array_accu ? vars_ignoring_length(l.limit, accu) : vars(l.limit);
    bounds_vars.insert(v.begin(), v.end());
    if (k > 0) {
      auto vi = vars(l.init);
      bounds_vars.insert(vi.begin(), vi.end());
    }
  }
  r.verdicts.push_back(not_in("N1", accu, bounds_vars));

  // N2: no level's index occurs in its own limit
  Verdict n2{"N2", true, {}, {}};
  for (const auto& l : roles.levels) {
    if (vars(l.limit).count(l.binder)) n2.offending.insert(l.binder);
  }
  n2.pass = n2.offending.empty();
  r.verdicts.push_back(n2);

  r.verdicts.push_back(not_in("N3", accu, writes(roles.blocks)));

  // N4: every index is left alone inside its own loop
  Verdict n4{"N4", true, {}, {}};
  const SymbolSet w_exp3 = writes(roles.exp3);
  for (std::size_t k = 0; k < d; ++k) {
    const auto within = blocks_within(roles, k);
    const SymbolSet w = set_union(writes(within), w_exp3);
    if (w.count(roles.levels[k].binder)) n4.offending.insert(roles.levels[k].binder);
  }
  n4.pass = n4.offending.empty();
  r.verdicts.push_back(n4);

  // N5: the innermost loop, as C5
  const std::vector<std::string> innermost = range_of(roles.blocks, d - 1, d + 1);
  const std::vector<std::string> inner_exprs = {inner.init, inner.limit, roles.exp3};
  r.verdicts.push_back(disjoint("N5", vars(inner_exprs),
                                set_union(writes(innermost), writes(inner_exprs))));

  // N6: nothing the formula reads is written by an outer level
  std::vector<std::string> all_exprs = {roles.exp3};
  for (const auto& l : roles.levels) {
    all_exprs.push_back(l.init);
    all_exprs.push_back(l.limit);
  }
  r.verdicts.push_back(disjoint("N6", vars(all_exprs), writes(outer_blocks(roles))));
  return r;
}

ConstraintReport check_nested_foreach(const CapturedRoles& roles) {
  ConstraintReport r;
  const std::size_t d = roles.levels.size();
  if (d == 0) return r;
  const SymbolSet w_all = writes(roles.blocks);
  const std::vector<std::string> innermost = range_of(roles.blocks, d - 1, d + 1);
  const SymbolSet w_inner = writes(innermost);
  const LoopLevel& inner = roles.levels.back();

  Verdict e1{"E1", true, {}, {}};
  for (std::size_t k = 0; k + 1 < d; ++k) {
    if (w_all.count(roles.levels[k].binder)) e1.offending.insert(roles.levels[k].binder);
  }
  e1.pass = e1.offending.empty();
  r.verdicts.push_back(e1);

  r.verdicts.push_back(not_in("E2", inner.binder, w_inner));

  std::vector<std::string> outer_colls;
  for (std::size_t k = 0; k + 1 < d; ++k) outer_colls.push_back(roles.levels[k].collection);
  r.verdicts.push_back(disjoint("E3", vars(outer_colls), w_all));

  const std::vector<std::string> e4_exprs = {inner.collection, roles.exp3};
  r.verdicts.push_back(
      disjoint("E4", vars(e4_exprs), set_union(w_inner, writes(roles.exp3))));

  // E5: the accumulator is neither read by the formula nor written elsewhere.
  // An accumulator rooted at a binder (`entry.total`) may appear in the inner
  // collections, and E1/E2 already cover its writes.
  const std::string accu = base_identifier(roles.accu);
  bool binder_rooted = false;
  for (const auto& l : roles.levels) binder_rooted = binder_rooted || l.binder == accu;
  std::vector<std::string> read = {roles.exp3};
  if (!binder_rooted) {
    for (const auto& l : roles.levels) read.push_back(l.collection);
  }
  Verdict e5 = not_in("E5", accu, binder_rooted ? vars(read) : set_union(vars(read), w_all));
  r.verdicts.push_back(e5);
  return r;
}

std::optional<std::string> source(std::string_view component) {
  static const std::regex member(
      R"(^\s*([\s\S]+?)\s*\.\s*(?:x|y|getX\s*\(\s*\)|getY\s*\(\s*\)|get\s*\(\s*[01]\s*\))\s*$)");
  static const std::regex subscript(R"(^\s*([\s\S]+?)\s*\[\s*[^\[\]]+\s*\]\s*$)");
  static const std::regex suffixed(R"(^\s*([A-Za-z_$][\w$]*?)[xyXY01]\s*$)");
  const std::string s(component);
  std::smatch m;
  if (std::regex_match(s, m, member)) return text::collapse_ws(m.str(1));
  if (std::regex_match(s, m, subscript)) return text::collapse_ws(m.str(1));
  if (std::regex_match(s, m, suffixed)) return m.str(1);
  return std::nullopt;
}

std::optional<int> index(std::string_view component) {
  static const std::regex member(
      R"(^[\s\S]+?\.\s*(x|y|getX\s*\(\s*\)|getY\s*\(\s*\)|get\s*\(\s*([01])\s*\))\s*$)");
  static const std::regex subscript(R"(^[\s\S]+?\[\s*([^\[\]]+?)\s*\]\s*$)");
  static const std::regex suffixed(R"(^\s*[A-Za-z_$][\w$]*?([xyXY01])\s*$)");
  const std::string s(component);
  std::smatch m;
  if (std::regex_match(s, m, member)) {
    if (m[2].matched) return m.str(2) == "0" ? 0 : 1;
    const std::string sel = m.str(1);
    return (sel == "x" || sel.rfind("getX", 0) == 0) ? 0 : 1;
  }
  if (std::regex_match(s, m, subscript)) {
    if (m.str(1) == "0") return 0;
    if (m.str(1) == "1") return 1;
    return std::nullopt;
  }
  if (std::regex_match(s, m, suffixed)) {
    const char c = m.str(1)[0];
    return (c == 'x' || c == 'X' || c == '0') ? 0 : 1;
  }
  return std::nullopt;
}

ConstraintReport check_vector(const CapturedRoles& roles, PatternKind kind) {
  ConstraintReport r;
  if (!roles.vector) return r;
  const VectorSlots& v = *roles.vector;
  constexpr std::string_view kUnrecognized = "unrecognized component access";

  auto src_eq = [&](std::string id, std::string_view a, std::string_view b) {
    Verdict out{std::move(id), true, {}, {}};
    const auto sa = source(a);
    const auto sb = source(b);
    if (!sa || !sb) {
      out.pass = false;
      out.note = kUnrecognized;
      if (!sa) out.offending.insert(std::string(a));
      if (!sb) out.offending.insert(std::string(b));
    } else if (*sa != *sb) {
      out.pass = false;
      out.offending = {*sa, *sb};
    }
    return out;
  };
  // all components resolve to one index; `expect` pins that index
  auto idx_eq = [&](std::string id, std::vector<std::string_view> comps,
                    std::optional<int> expect) {
    Verdict out{std::move(id), true, {}, {}};
    std::optional<int> seen = expect;
    for (auto c : comps) {
      const auto i = index(c);
      if (!i) {
        out.pass = false;
        out.note = kUnrecognized;
        out.offending.insert(std::string(c));
        continue;
      }
      if (seen && *seen != *i) {
        out.pass = false;
        out.offending.insert(std::string(c));
      }
      if (!seen) seen = i;
    }
    return out;
  };

  // V1: each operand vector draws both components from one source
  Verdict v1 = src_eq("V1", v.operands[0][0], v.operands[0][1]);
  Verdict v1b = src_eq("V1", v.operands[1][0], v.operands[1][1]);
  if (!v1b.pass) {
    v1.pass = false;
    v1.offending.insert(v1b.offending.begin(), v1b.offending.end());
    if (v1.note.empty()) v1.note = v1b.note;
  }
  r.verdicts.push_back(v1);

  // V2: components line up across operands and cover both dimensions
  Verdict v2 = idx_eq("V2", {v.operands[0][0], v.operands[1][0]}, std::nullopt);
  Verdict v2b = idx_eq("V2", {v.operands[0][1], v.operands[1][1]}, std::nullopt);
  if (!v2b.pass) {
    v2.pass = false;
    v2.offending.insert(v2b.offending.begin(), v2b.offending.end());
    if (v2.note.empty()) v2.note = v2b.note;
  }
  if (v2.pass) {
    if (index(v.operands[0][0]) == index(v.operands[0][1])) {
      v2.pass = false;
      v2.offending = {v.operands[0][0], v.operands[0][1]};
      v2.note = "both components use the same index";
    }
  }
  r.verdicts.push_back(v2);

  if (kind == PatternKind::VEC_ADD && v.targets.size() == 2) {
    r.verdicts.push_back(idx_eq("V3", {v.targets[0], v.operands[0][0], v.operands[1][0]}, std::nullopt));
    r.verdicts.push_back(idx_eq("V4", {v.targets[1], v.operands[0][1], v.operands[1][1]}, std::nullopt));
    r.verdicts.push_back(src_eq("V5", v.targets[0], v.targets[1]));
  }
  return r;
}

ConstraintReport check(const PatternMatch& match) {
  ConstraintReport r;
  switch (match.kind) {
    case PatternKind::FIS:
    case PatternKind::FES:
    case PatternKind::FIA:
    case PatternKind::FEC:
      r = check_for_sum(match.roles);
      break;
    case PatternKind::NFISS:
    case PatternKind::NFIAS:
    case PatternKind::NFIAA:
      r = check_nested_for(match.roles);
      break;
    case PatternKind::NFESS:
    case PatternKind::NFECS:
    case PatternKind::NFECC:
      r = check_nested_foreach(match.roles);
      break;
    case PatternKind::VEC_ADD:
    case PatternKind::VEC_DOT:
      r = check_vector(match.roles, match.kind);
      break;
    case PatternKind::LOOP_SIMPLE:
    case PatternKind::LOOP_NESTED:
      break;
  }
  r.match_id = match.id();
  return r;
}

}  // namespace fminer
