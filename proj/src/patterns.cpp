// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

#include "fminer/patterns.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <tuple>

#include "fminer/constraints.hpp"
#include "fminer/text.hpp"

namespace fminer {

using text::Span;

std::string_view to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::FIS: return "FIS";
    case PatternKind::FES: return "FES";
    case PatternKind::FIA: return "FIA";
    case PatternKind::FEC: return "FEC";
    case PatternKind::NFISS: return "NFISS";
    case PatternKind::NFESS: return "NFESS";
    case PatternKind::NFIAS: return "NFIAS";
    case PatternKind::NFECS: return "NFECS";
    case PatternKind::NFIAA: return "NFIAA";
    case PatternKind::NFECC: return "NFECC";
    case PatternKind::VEC_ADD: return "VEC_ADD";
    case PatternKind::VEC_DOT: return "VEC_DOT";
    case PatternKind::LOOP_SIMPLE: return "LOOP_SIMPLE";
    case PatternKind::LOOP_NESTED: return "LOOP_NESTED";
  }
  return "?";
}

std::optional<PatternKind> parse_kind(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "FEA") return PatternKind::FEC;
  for (PatternKind k : kAllKinds) {
    if (to_string(k) == upper) return k;
  }
  return std::nullopt;
}

bool is_nested(PatternKind kind) {
  switch (kind) {
    case PatternKind::NFISS:
    case PatternKind::NFESS:
    case PatternKind::NFIAS:
    case PatternKind::NFECS:
    case PatternKind::NFIAA:
    case PatternKind::NFECC:
    case PatternKind::LOOP_NESTED:
      return true;
    default:
      return false;
  }
}

bool is_loop_counter(PatternKind kind) {
  return kind == PatternKind::LOOP_SIMPLE || kind == PatternKind::LOOP_NESTED;
}

bool is_sp(PatternKind kind) { return !is_loop_counter(kind); }

bool is_experimental(PatternKind kind) {
  return kind == PatternKind::VEC_ADD || kind == PatternKind::VEC_DOT;
}

bool is_foreach_kind(PatternKind kind) {
  switch (kind) {
    case PatternKind::FES:
    case PatternKind::FEC:
    case PatternKind::NFESS:
    case PatternKind::NFECS:
    case PatternKind::NFECC:
      return true;
    default:
      return false;
  }
}

std::set<PatternKind> default_kinds() {
  std::set<PatternKind> out;
  for (PatternKind k : kAllKinds) {
    if (!is_experimental(k)) out.insert(k);
  }
  return out;
}

std::string_view to_string(RelOp op) {
  switch (op) {
    case RelOp::kLt: return "<";
    case RelOp::kLe: return "<=";
    case RelOp::kGt: return ">";
    case RelOp::kGe: return ">=";
    case RelOp::kNe: return "!=";
  }
  return "?";
}

char symbol(AccuOp op) {
  switch (op) {
    case AccuOp::kAdd: return '+';
    case AccuOp::kSub: return '-';
    case AccuOp::kMul: return '*';
    case AccuOp::kDiv: return '/';
  }
  return '?';
}

std::vector<std::string> CapturedRoles::index_vars() const {
  std::vector<std::string> out;
  for (const auto& l : levels) out.push_back(l.binder);
  return out;
}

std::string PatternMatch::id() const {
  return project + "/" + path + ":" + std::to_string(start_line) + ":" +
         std::string(to_string(kind));
}

namespace {

// Regex building blocks. VAR is a Java identifier; accumulators may be
// dotted and carry up to two array subscripts without nested brackets.
#define FM_IDENT "[A-Za-z_$][\\w$]*"
#define FM_TYPE                                                     \
  "(?:" FM_IDENT "(?:\\s*\\.\\s*" FM_IDENT ")*(?:\\s*<[^;=]*>)?" \
  "(?:\\s*\\[\\s*\\])*)"
#define FM_LVALUE                                               \
  "(?:this\\s*\\.\\s*)?" FM_IDENT "(?:\\s*\\.\\s*" FM_IDENT ")*" \
  "(?:\\s*\\[[^\\[\\]]*\\]){0,2}"

const std::regex& init_re() {
  static const std::regex re("^\\s*(?:final\\s+)?(?:" FM_TYPE "\\s+)?(" FM_IDENT
                             ")\\s*=(?!=)\\s*([\\s\\S]+?)\\s*$");
  return re;
}
const std::regex& cond_re() {
  static const std::regex re("^\\s*(" FM_IDENT
                             ")\\s*(<=|>=|!=|<|>)\\s*([\\s\\S]+?)\\s*$");
  return re;
}
const std::regex& update_re() {
  static const std::regex re(
      "^\\s*(?:(" FM_IDENT ")\\s*=\\s*(" FM_IDENT ")\\s*\\+\\s*1|(" FM_IDENT
      ")\\s*\\+=\\s*1|\\+\\+\\s*(" FM_IDENT ")|(" FM_IDENT ")\\s*\\+\\+)\\s*$");
  return re;
}
const std::regex& decrement_re() {
  static const std::regex re(
      "^\\s*(?:(" FM_IDENT ")\\s*=\\s*(" FM_IDENT ")\\s*-\\s*1|(" FM_IDENT
      ")\\s*-=\\s*1|--\\s*(" FM_IDENT ")|(" FM_IDENT ")\\s*--)\\s*$");
  return re;
}
const std::regex& foreach_decl_re() {
  static const std::regex re("^\\s*(?:final\\s+)?(?:@" FM_IDENT "\\s+)*" FM_TYPE
                             "\\s+(" FM_IDENT ")\\s*$");
  return re;
}
const std::regex& compound_re() {
  static const std::regex re("^(" FM_LVALUE ")\\s*([-+*/])=\\s*([\\s\\S]+?)\\s*;$");
  return re;
}
const std::regex& expanded_re() {
  static const std::regex re("^(" FM_LVALUE ")\\s*=(?!=)\\s*(" FM_LVALUE
                             ")\\s*([-+*/])\\s*([\\s\\S]+?)\\s*;$");
  return re;
}
const std::regex& vector_assign_re() {
  static const std::regex re("^(?:final\\s+)?(?:" FM_TYPE "\\s+)?(" FM_LVALUE
                             ")\\s*=(?!=)\\s*([\\s\\S]+?)\\s*;$");
  return re;
}
const std::regex& vector_atom_re() {
  static const std::regex re(
      "^(?:this\\s*\\.\\s*)?" FM_IDENT
      "(?:\\s*\\.\\s*" FM_IDENT "(?:\\s*\\(\\s*\\d*\\s*\\))?|\\s*\\[[^\\[\\]]+\\])*$");
  return re;
}

#undef FM_IDENT
#undef FM_TYPE
#undef FM_LVALUE

// libstdc++'s std::regex recurses per character; very long statements are
// not plausible formula slots and are skipped.
constexpr std::size_t kMaxRegexInput = 4000;

bool regex_match_limited(const std::string& s, std::smatch& m,
                         const std::regex& re) {
  return s.size() <= kMaxRegexInput && std::regex_match(s, m, re);
}

struct LoopInfo {
  Span whole;
  Span header;
  Span body;
  bool foreach = false;
  std::optional<LoopLevel> level;
  std::vector<Span> statements;
  std::vector<int> stmt_loop;
  bool contains_loop = false;
  bool inside_loop = false;
};

struct Accumulation {
  Span statement;
  std::string accu;
  AccuOp op = AccuOp::kAdd;
  std::string exp3;
  bool compound = false;
};

AccuOp op_from(char c) {
  switch (c) {
    case '+': return AccuOp::kAdd;
    case '-': return AccuOp::kSub;
    case '*': return AccuOp::kMul;
    default: return AccuOp::kDiv;
  }
}

// `accu = accu op exp3` only equals `accu op= exp3` when no operator in
// exp3 binds looser than op.
bool expanded_form_faithful(AccuOp op, std::string_view masked_exp3) {
  for (const auto& o : text::top_level_binary_ops(masked_exp3)) {
    switch (op) {
      case AccuOp::kAdd:
        if (o.op != "+" && o.op != "-" && o.op != "*" && o.op != "/" && o.op != "%")
          return false;
        break;
      case AccuOp::kSub:
        if (o.op != "*" && o.op != "/" && o.op != "%") return false;
        break;
      case AccuOp::kMul:
        if (o.op != "*") return false;
        break;
      case AccuOp::kDiv:
        return false;
    }
  }
  return true;
}

class FileScan {
 public:
  explicit FileScan(const SourceUnit& unit)
      : unit_(unit),
        src_(unit.stripped_text),
        masked_(text::mask_literals(unit.stripped_text)),
        lines_(unit.stripped_text) {
    find_loops();
  }

  std::vector<PatternMatch> matches(const std::set<PatternKind>& enabled) const;

 private:
  void find_loops();
  std::optional<LoopLevel> parse_header(const LoopInfo& loop) const;
  std::optional<Accumulation> parse_accumulation(Span stmt) const;
  std::optional<Accumulation> find_accumulation(
      const LoopInfo& loop, const std::vector<std::string>& binders,
      bool counting) const;
  void single_level(const std::set<PatternKind>& enabled,
                    std::vector<PatternMatch>& out) const;
  void nested(const std::set<PatternKind>& enabled,
              std::vector<PatternMatch>& out) const;
  void loop_counters(const std::set<PatternKind>& enabled,
                     std::vector<PatternMatch>& out) const;
  void vectors(const std::set<PatternKind>& enabled,
               std::vector<PatternMatch>& out) const;

  std::string slot(Span s) const { return text::collapse_ws(s.of(src_)); }
  std::string block(Span s) const {
    return std::string(text::trim(s.of(src_)));
  }
  PatternMatch make_match(PatternKind kind, Span whole) const;

  const SourceUnit& unit_;
  std::string_view src_;
  std::string masked_;
  text::LineIndex lines_;
  std::vector<LoopInfo> loops_;
  std::map<std::size_t, int> loop_at_;
};

void FileScan::find_loops() {
  const std::string_view m = masked_;
  std::size_t pos = 0;
  while ((pos = m.find("for", pos)) != std::string_view::npos) {
    const std::size_t kw = pos;
    pos += 3;
    if (!text::keyword_at(m, kw, "for")) continue;
    std::size_t p = pos;
    while (p < m.size() && text::is_space(m[p])) ++p;
    if (p >= m.size() || m[p] != '(') continue;
    const std::size_t close = text::find_closing(m, p);
    if (close == std::string_view::npos) continue;
    std::size_t b = close + 1;
    while (b < m.size() && text::is_space(m[b])) ++b;
    if (b >= m.size()) continue;

    LoopInfo loop;
    loop.header = Span{p + 1, close};
    if (m[b] == '{') {
      const std::size_t end = text::find_closing(m, b);
      if (end == std::string_view::npos) continue;
      loop.body = Span{b + 1, end};
      loop.whole = Span{kw, end + 1};
    } else if (m[b] == ';') {
      loop.body = Span{b, b};
      loop.whole = Span{kw, b + 1};
    } else {
      const std::size_t end = text::statement_end(m, b, m.size());
      loop.body = Span{b, end};
      loop.whole = Span{kw, end};
    }
    const auto semis = text::top_level_positions(m, loop.header, ';');
    loop.foreach = semis.empty();
    loop.statements = text::split_statements(m, loop.body);
    loop_at_[kw] = static_cast<int>(loops_.size());
    loops_.push_back(std::move(loop));
  }

  for (auto& loop : loops_) loop.level = parse_header(loop);

  // Nesting relations and which body statements are loops.
  for (std::size_t i = 0; i < loops_.size(); ++i) {
    LoopInfo& loop = loops_[i];
    for (std::size_t j = i + 1; j < loops_.size(); ++j) {
      if (loops_[j].whole.begin >= loop.body.end) break;
      if (loops_[j].whole.begin >= loop.body.begin) {
        loop.contains_loop = true;
        loops_[j].inside_loop = true;
      }
    }
    for (const Span& s : loop.statements) {
      const std::size_t start = text::skip_label(m, s.begin, s.end);
      auto it = loop_at_.find(start);
      loop.stmt_loop.push_back(it == loop_at_.end() ? -1 : it->second);
    }
  }
}

std::optional<LoopLevel> FileScan::parse_header(const LoopInfo& loop) const {
  const std::string_view m = masked_;
  LoopLevel level;
  std::smatch mt;
  if (loop.foreach) {
    // first top-level ':' that is not part of '::'
    std::optional<std::size_t> colon;
    for (std::size_t p : text::top_level_positions(m, loop.header, ':')) {
      if ((p > 0 && m[p - 1] == ':') || (p + 1 < m.size() && m[p + 1] == ':')) continue;
      colon = p;
      break;
    }
    if (!colon) return std::nullopt;
    const std::string decl(m.substr(loop.header.begin, *colon - loop.header.begin));
    if (!regex_match_limited(decl, mt, foreach_decl_re())) return std::nullopt;
    const Span coll = text::trim(m, Span{*colon + 1, loop.header.end});
    if (coll.empty()) return std::nullopt;
    level.foreach = true;
    level.binder = mt.str(1);
    level.collection = slot(coll);
    return level;
  }

  const auto parts = text::split_top_level(m, loop.header, ';');
  if (parts.size() != 3) return std::nullopt;
  const std::string init(parts[0].of(m));
  if (!regex_match_limited(init, mt, init_re())) return std::nullopt;
  level.binder = mt.str(1);
  const Span exp1{parts[0].begin + static_cast<std::size_t>(mt.position(2)),
                  parts[0].begin + static_cast<std::size_t>(mt.position(2) + mt.length(2))};
  for (const auto& o : text::top_level_binary_ops(exp1.of(m))) {
    if (o.op == ",") return std::nullopt;  // several declarators
  }
  level.init = slot(exp1);

  const std::string cond(parts[1].of(m));
  if (!regex_match_limited(cond, mt, cond_re())) return std::nullopt;
  if (mt.str(1) != level.binder) return std::nullopt;
  const std::string rel = mt.str(2);
  level.rel = rel == "<"    ? RelOp::kLt
              : rel == "<=" ? RelOp::kLe
              : rel == ">"  ? RelOp::kGt
              : rel == ">=" ? RelOp::kGe
                            : RelOp::kNe;
  const Span exp2{parts[1].begin + static_cast<std::size_t>(mt.position(3)),
                  parts[1].begin + static_cast<std::size_t>(mt.position(3) + mt.length(3))};
  for (const auto& o : text::top_level_binary_ops(exp2.of(m))) {
    // the bound must be a single comparison operand
    if (o.op != "+" && o.op != "-" && o.op != "*" && o.op != "/" &&
        o.op != "%" && o.op != "<<" && o.op != ">>" && o.op != ">>>") {
      return std::nullopt;
    }
  }
  level.limit = slot(exp2);

  const std::string update(parts[2].of(m));
  if (!regex_match_limited(update, mt, update_re())) {
    if (!regex_match_limited(update, mt, decrement_re())) return std::nullopt;
    level.descending = true;
  }
  for (std::size_t g = 1; g < mt.size(); ++g) {
    if (mt[g].matched && mt.str(g) != level.binder) return std::nullopt;
  }
  level.increment = text::collapse_ws(parts[2].of(src_));
  return level;
}

std::optional<Accumulation> FileScan::parse_accumulation(Span stmt) const {
  const std::string_view m = masked_;
  const std::string s(stmt.of(m));
  if (s.empty() || s.back() != ';') return std::nullopt;
  std::smatch mt;
  Accumulation acc;
  acc.statement = stmt;
  auto span_of = [&](int g) {
    return Span{stmt.begin + static_cast<std::size_t>(mt.position(g)),
                stmt.begin + static_cast<std::size_t>(mt.position(g) + mt.length(g))};
  };
  Span exp3;
  if (regex_match_limited(s, mt, compound_re())) {
    acc.accu = slot(span_of(1));
    acc.op = op_from(mt.str(2)[0]);
    acc.compound = true;
    exp3 = span_of(3);
    for (const auto& o : text::top_level_binary_ops(exp3.of(m))) {
      if (o.op == ",") return std::nullopt;
    }
  } else if (regex_match_limited(s, mt, expanded_re())) {
    if (text::collapse_ws(mt.str(1)) != text::collapse_ws(mt.str(2))) return std::nullopt;
    acc.accu = slot(span_of(1));
    acc.op = op_from(mt.str(3)[0]);
    exp3 = span_of(4);
    if (!expanded_form_faithful(acc.op, exp3.of(m))) return std::nullopt;
  } else {
    return std::nullopt;
  }
  acc.exp3 = slot(exp3);
  if (acc.exp3.empty()) return std::nullopt;
  return acc;
}

std::optional<Accumulation> FileScan::find_accumulation(
    const LoopInfo& loop, const std::vector<std::string>& binders,
    bool counting) const {
  for (std::size_t k = 0; k < loop.statements.size(); ++k) {
    if (loop.stmt_loop[k] >= 0) continue;
    auto acc = parse_accumulation(loop.statements[k]);
    if (!acc) continue;
    const std::string base = base_identifier(acc->accu);
    if (counting &&
        std::find(binders.begin(), binders.end(), base) != binders.end()) {
      continue;  // updates the index, not an accumulator
    }
    return acc;
  }
  return std::nullopt;
}

PatternMatch FileScan::make_match(PatternKind kind, Span whole) const {
  PatternMatch m;
  m.kind = kind;
  m.project = unit_.project;
  m.path = unit_.relative_path;
  m.begin = whole.begin;
  m.end = whole.end;
  m.start_line = lines_.line_of(whole.begin);
  m.end_line = lines_.line_of(whole.end > whole.begin ? whole.end - 1 : whole.begin);
  m.snippet = std::string(whole.of(src_));
  return m;
}

void FileScan::single_level(const std::set<PatternKind>& enabled,
                            std::vector<PatternMatch>& out) const {
  const bool any = enabled.count(PatternKind::FIS) || enabled.count(PatternKind::FIA) ||
                   enabled.count(PatternKind::FES) || enabled.count(PatternKind::FEC);
  if (!any) return;
  for (const LoopInfo& loop : loops_) {
    if (!loop.level) continue;
    const LoopLevel& level = *loop.level;
    const bool counting = !level.foreach;
    auto acc = find_accumulation(loop, {level.binder}, counting);
    if (!acc) continue;
    const bool mentions = vars(acc->accu).count(level.binder) > 0;
    const PatternKind kind = counting ? (mentions ? PatternKind::FIA : PatternKind::FIS)
                                      : (mentions ? PatternKind::FEC : PatternKind::FES);
    if (!enabled.count(kind)) continue;
    PatternMatch m = make_match(kind, loop.whole);
    m.roles.levels = {level};
    m.roles.accu = acc->accu;
    m.roles.op = acc->op;
    m.roles.exp3 = acc->exp3;
    m.roles.compound_assignment = acc->compound;
    m.roles.accumulation = text::collapse_ws(acc->statement.of(src_));
    m.roles.blocks = {block(Span{loop.body.begin, acc->statement.begin}),
                      block(Span{acc->statement.end, loop.body.end})};
    out.push_back(std::move(m));
  }
}

void FileScan::nested(const std::set<PatternKind>& enabled,
                      std::vector<PatternMatch>& out) const {
  std::vector<bool> consumed(loops_.size(), false);

  struct Nest {
    std::vector<int> chain;
    Accumulation acc;
    PatternKind kind;
  };

  auto classify = [&](const std::vector<int>& chain,
                      const Accumulation& acc) -> std::optional<PatternKind> {
    std::vector<std::string> binders;
    for (int idx : chain) binders.push_back(loops_[idx].level->binder);
    const SymbolSet mentioned = vars(acc.accu);
    std::size_t prefix = 0;
    while (prefix < binders.size() && mentioned.count(binders[prefix])) ++prefix;
    for (std::size_t k = prefix; k < binders.size(); ++k) {
      if (mentioned.count(binders[k])) return std::nullopt;
    }
    const bool foreach = loops_[chain.front()].level->foreach;
    if (prefix == 0) return foreach ? PatternKind::NFESS : PatternKind::NFISS;
    if (prefix == 1) return foreach ? PatternKind::NFECS : PatternKind::NFIAS;
    if (prefix == 2) return foreach ? PatternKind::NFECC : PatternKind::NFIAA;
    return std::nullopt;
  };

  auto same_style = [&](int a, int b) {
    return loops_[b].level && loops_[a].level->foreach == loops_[b].level->foreach;
  };

  auto try_chain = [&](const std::vector<int>& chain) -> std::optional<Nest> {
    std::vector<std::string> binders;
    for (int idx : chain) binders.push_back(loops_[idx].level->binder);
    // binders of one nest must be distinct
    std::vector<std::string> sorted = binders;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
    const bool counting = !loops_[chain.front()].level->foreach;
    auto acc = find_accumulation(loops_[chain.back()], binders, counting);
    if (!acc) return std::nullopt;
    auto kind = classify(chain, *acc);
    if (!kind) return std::nullopt;
    return Nest{chain, *acc, *kind};
  };

  for (std::size_t i = 0; i < loops_.size(); ++i) {
    if (consumed[i] || !loops_[i].level) continue;
    const int outer = static_cast<int>(i);
    std::optional<Nest> found;
    for (int mid : loops_[i].stmt_loop) {
      if (found) break;
      if (mid < 0 || !same_style(outer, mid)) continue;
      for (int inner : loops_[mid].stmt_loop) {
        if (inner < 0 || !same_style(outer, inner)) continue;
        found = try_chain({outer, mid, inner});
        if (found) break;
      }
    }
    for (int mid : loops_[i].stmt_loop) {
      if (found) break;
      if (mid < 0 || !same_style(outer, mid)) continue;
      found = try_chain({outer, mid});
    }
    if (!found) continue;
    for (std::size_t k = 1; k < found->chain.size(); ++k) consumed[found->chain[k]] = true;
    if (!enabled.count(found->kind)) continue;

    PatternMatch m = make_match(found->kind, loops_[i].whole);
    std::vector<std::string> pre;
    std::vector<std::string> post;
    for (std::size_t k = 0; k < found->chain.size(); ++k) {
      const LoopInfo& lvl = loops_[found->chain[k]];
      m.roles.levels.push_back(*lvl.level);
      const Span inner = k + 1 < found->chain.size() ? loops_[found->chain[k + 1]].whole
                                                     : found->acc.statement;
      pre.push_back(block(Span{lvl.body.begin, inner.begin}));
      post.push_back(block(Span{inner.end, lvl.body.end}));
    }
    m.roles.blocks = pre;
    m.roles.blocks.insert(m.roles.blocks.end(), post.rbegin(), post.rend());
    m.roles.accu = found->acc.accu;
    m.roles.op = found->acc.op;
    m.roles.exp3 = found->acc.exp3;
    m.roles.compound_assignment = found->acc.compound;
    m.roles.accumulation = text::collapse_ws(found->acc.statement.of(src_));
    out.push_back(std::move(m));
  }
}

void FileScan::loop_counters(const std::set<PatternKind>& enabled,
                             std::vector<PatternMatch>& out) const {
  const bool simple = enabled.count(PatternKind::LOOP_SIMPLE) > 0;
  const bool nested = enabled.count(PatternKind::LOOP_NESTED) > 0;
  for (const LoopInfo& loop : loops_) {
    if (simple && !loop.contains_loop) {
      out.push_back(make_match(PatternKind::LOOP_SIMPLE, loop.whole));
    } else if (nested && loop.contains_loop && !loop.inside_loop) {
      out.push_back(make_match(PatternKind::LOOP_NESTED, loop.whole));
    }
  }
}

void FileScan::vectors(const std::set<PatternKind>& enabled,
                       std::vector<PatternMatch>& out) const {
  const bool want_dot = enabled.count(PatternKind::VEC_DOT) > 0;
  const bool want_add = enabled.count(PatternKind::VEC_ADD) > 0;
  if (!want_dot && !want_add) return;
  const std::string_view m = masked_;

  struct Stmt {
    Span span;
    bool follows_statement;
  };
  std::vector<Stmt> stmts;
  int depth = 0;
  std::size_t seg = 0;
  bool prev_semicolon = false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const char c = m[i];
    if (c == '(' || c == '[') {
      ++depth;
    } else if (c == ')' || c == ']') {
      depth = std::max(0, depth - 1);
    } else if (depth == 0 && (c == ';' || c == '{' || c == '}')) {
      if (c == ';') {
        const Span s = text::trim(m, Span{seg, i + 1});
        stmts.push_back({s, prev_semicolon});
      }
      prev_semicolon = c == ';';
      seg = i + 1;
    }
  }

  struct Assign {
    std::string target;
    Span rhs;
  };
  auto parse_assign = [&](Span s) -> std::optional<Assign> {
    const std::string str(s.of(m));
    std::smatch mt;
    if (!regex_match_limited(str, mt, vector_assign_re())) return std::nullopt;
    Span rhs{s.begin + static_cast<std::size_t>(mt.position(2)),
             s.begin + static_cast<std::size_t>(mt.position(2) + mt.length(2))};
    if (m[rhs.begin] == '(' && text::find_closing(m, rhs.begin) == rhs.end - 1) {
      rhs = text::trim(m, Span{rhs.begin + 1, rhs.end - 1});
    }
    return Assign{slot(Span{s.begin + static_cast<std::size_t>(mt.position(1)),
                            s.begin + static_cast<std::size_t>(mt.position(1) + mt.length(1))}),
                  rhs};
  };
  auto atom = [&](Span s) -> std::optional<std::string> {
    s = text::trim(m, s);
    if (s.empty()) return std::nullopt;
    const std::string str(s.of(m));
    std::smatch mt;
    if (!regex_match_limited(str, mt, vector_atom_re())) return std::nullopt;
    return slot(s);
  };
  // Splits `rhs` at its top-level operators, which must be exactly `ops`.
  auto split_ops = [&](Span rhs, const std::vector<std::string>& ops)
      -> std::optional<std::vector<std::string>> {
    const auto found = text::top_level_binary_ops(rhs.of(m));
    if (found.size() != ops.size()) return std::nullopt;
    std::vector<std::string> atoms;
    std::size_t start = rhs.begin;
    for (std::size_t k = 0; k < found.size(); ++k) {
      if (found[k].op != ops[k]) return std::nullopt;
      const std::size_t at = rhs.begin + found[k].pos;
      auto a = atom(Span{start, at});
      if (!a) return std::nullopt;
      atoms.push_back(*a);
      start = at + found[k].op.size();
    }
    auto last = atom(Span{start, rhs.end});
    if (!last) return std::nullopt;
    atoms.push_back(*last);
    return atoms;
  };

  std::size_t skip_until = 0;
  for (std::size_t k = 0; k < stmts.size(); ++k) {
    const Span s = stmts[k].span;
    auto a = parse_assign(s);
    if (!a) continue;
    if (want_dot) {
      if (auto atoms = split_ops(a->rhs, {"*", "+", "*"})) {
        PatternMatch pm = make_match(PatternKind::VEC_DOT, s);
        VectorSlots vs;
        vs.targets = {a->target};
        vs.operands = {{{(*atoms)[0], (*atoms)[2]}, {(*atoms)[1], (*atoms)[3]}}};
        pm.roles.vector = vs;
        out.push_back(std::move(pm));
        continue;
      }
    }
    if (!want_add || k + 1 >= stmts.size() || !stmts[k + 1].follows_statement ||
        s.begin < skip_until) {
      continue;
    }
    auto first = split_ops(a->rhs, {"+"});
    if (!first) continue;
    auto b = parse_assign(stmts[k + 1].span);
    if (!b) continue;
    auto second = split_ops(b->rhs, {"+"});
    if (!second) continue;
    PatternMatch pm = make_match(PatternKind::VEC_ADD, Span{s.begin, stmts[k + 1].span.end});
    VectorSlots vs;
    vs.targets = {a->target, b->target};
    vs.operands = {{{(*first)[0], (*second)[0]}, {(*first)[1], (*second)[1]}}};
    pm.roles.vector = vs;
    out.push_back(std::move(pm));
    skip_until = stmts[k + 1].span.end;
  }
}

std::vector<PatternMatch> FileScan::matches(const std::set<PatternKind>& enabled) const {
  std::vector<PatternMatch> out;
  single_level(enabled, out);
  nested(enabled, out);
  vectors(enabled, out);
  loop_counters(enabled, out);
  std::stable_sort(out.begin(), out.end(), [](const PatternMatch& a, const PatternMatch& b) {
    return std::tuple(a.start_line, a.kind, a.begin) < std::tuple(b.start_line, b.kind, b.begin);
  });
  return out;
}

}  // namespace

std::vector<PatternMatch> match_kind(PatternKind kind, const SourceUnit& unit) {
  return FileScan(unit).matches({kind});
}

std::vector<PatternMatch> match_all(const SourceUnit& unit,
                                    const std::set<PatternKind>& enabled) {
  if (enabled.empty() || unit.stripped_text.empty()) return {};
  return FileScan(unit).matches(enabled);
}

std::vector<PatternMatch> resolve_precedence(std::vector<PatternMatch> matches) {
  std::vector<std::pair<int, int>> nested_spans;
  for (const auto& m : matches) {
    if (is_sp(m.kind) && is_nested(m.kind)) nested_spans.emplace_back(m.start_line, m.end_line);
  }
  std::erase_if(matches, [&](const PatternMatch& m) {
    if (!is_sp(m.kind) || is_nested(m.kind)) return false;
    return std::any_of(nested_spans.begin(), nested_spans.end(), [&](const auto& s) {
      return m.start_line <= s.second && s.first <= m.end_line;
    });
  });
  return matches;
}

const std::vector<CatalogEntry>& pattern_catalog() {
  static const std::vector<CatalogEntry> catalog = {
      {PatternKind::FIS, "for-loop computing a sum/product",
       "for (index = exp1; index REL exp2; index++) { block1 accu op= exp3; block2 }",
       "index exp1 exp2 rel-op accu op exp3 block1 block2 (accu does not mention index)"},
      {PatternKind::FES, "foreach-loop computing a sum/product",
       "for (T elem : exp2) { block1 accu op= exp3; block2 }",
       "elem exp2 accu op exp3 block1 block2 (accu does not mention elem)"},
      {PatternKind::FIA, "for-loop filling an array",
       "for (index = exp1; index REL exp2; index++) { block1 accu[..index..] op= exp3; block2 }",
       "index exp1 exp2 rel-op accu op exp3 block1 block2 (accu mentions index)"},
      {PatternKind::FEC, "foreach-loop updating an array/collection",
       "for (T elem : exp2) { block1 accu(elem) op= exp3; block2 }",
       "elem exp2 accu op exp3 block1 block2 (accu mentions elem)"},
      {PatternKind::NFISS, "nested for-loops computing a sum/product of sums/products",
       "for (i ...) { block1 for (j ...) { block2 accu op= exp3; block3 } block4 }",
       "index-vars exp1/exp2/rel-op per level accu op exp3 block1..block4 "
       "(accu mentions no index; up to three levels; constraints N1..N6 extrapolate C1..C5)"},
      {PatternKind::NFESS, "nested foreach-loops computing a sum/product of sums/products",
       "for (T entry : exp1) { block1 for (U elem : exp2) { block2 accu op= exp3; block3 } block4 }",
       "entry elem exp1 exp2 accu op exp3 block1..block4 (accu mentions neither binder)"},
      {PatternKind::NFIAS, "nested for-loops computing an array of sums/products",
       "for (i ...) { block1 for (j ...) { block2 accu[..i..] op= exp3; block3 } block4 }",
       "index-vars exp1/exp2/rel-op per level accu op exp3 block1..block4 (accu mentions the outer index only)"},
      {PatternKind::NFECS, "nested foreach-loops computing an array/collection of sums/products",
       "for (T entry : exp1) { block1 for (U elem : exp2) { block2 entry op= exp3; block3 } block4 }",
       "entry elem exp1 exp2 accu op exp3 block1..block4 (accu mentions the outer binder only)"},
      {PatternKind::NFIAA, "nested for-loops computing an array of arrays",
       "for (i ...) { for (j ...) { [for (k ...) {] accu[..i..][..j..] op= exp3; [}] } }",
       "index-vars exp1/exp2/rel-op per level accu op exp3 blocks (accu mentions the two outer indices)"},
      {PatternKind::NFECC, "nested foreach-loops computing an array/collection of arrays/collections",
       "for (T a : exp1) { for (U b : exp2) { [for (V c : exp3') {] accu(a, b) op= exp3; [}] } }",
       "binders collections accu op exp3 blocks (accu mentions the two outer binders)"},
      {PatternKind::VEC_ADD, "vector addition (experimental, --vectors)",
       "var1 = exp11 + exp21; var2 = exp12 + exp22;",
       "var1 var2 exp11 exp12 exp21 exp22"},
      {PatternKind::VEC_DOT, "scalar product (experimental, --vectors)",
       "var = exp11 * exp21 + exp12 * exp22;",
       "var exp11 exp12 exp21 exp22"},
      {PatternKind::LOOP_SIMPLE, "for/foreach loop without an inner loop",
       "for (...) body-without-loops", "(none)"},
      {PatternKind::LOOP_NESTED, "outermost for/foreach loop containing another loop",
       "for (...) { ... for (...) ... }", "(none)"},
  };
  return catalog;
}

}  // namespace fminer
