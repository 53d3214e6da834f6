// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

#include "fminer/text.hpp"

#include <algorithm>
#include <array>

namespace fminer::text {

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

Span trim(std::string_view s, Span span) {
  while (span.begin < span.end && is_space(s[span.begin])) ++span.begin;
  while (span.end > span.begin && is_space(s[span.end - 1])) --span.end;
  return span;
}

std::string collapse_ws(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : s) {
    if (is_space(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

std::string mask_literals(std::string_view code) {
  std::string out(code);
  const std::size_t n = code.size();
  std::size_t i = 0;
  while (i < n) {
    const char c = code[i];
    if (c == '"' && code.substr(i, 3) == "\"\"\"") {
      // text block
      std::size_t j = i + 3;
      while (j < n && code.substr(j, 3) != "\"\"\"") {
        if (code[j] == '\\' && j + 1 < n) {
          if (code[j + 1] != '\n') out[j + 1] = ' ';
          out[j] = ' ';
          j += 2;
          continue;
        }
        if (code[j] != '\n') out[j] = ' ';
        ++j;
      }
      i = std::min(n, j + 3);
      continue;
    }
    if (c == '"' || c == '\'') {
      std::size_t j = i + 1;
      while (j < n && code[j] != c && code[j] != '\n') {
        if (code[j] == '\\' && j + 1 < n && code[j + 1] != '\n') {
          out[j] = ' ';
          out[j + 1] = ' ';
          j += 2;
          continue;
        }
        out[j] = ' ';
        ++j;
      }
      i = (j < n && code[j] == c) ? j + 1 : j;
      continue;
    }
    ++i;
  }
  return out;
}

bool is_java_keyword(std::string_view w) {
  static constexpr std::array<std::string_view, 53> kKeywords = {
      "abstract", "assert",     "boolean",   "break",      "byte",
      "case",     "catch",      "char",      "class",      "const",
      "continue", "default",    "do",        "double",     "else",
      "enum",     "extends",    "final",     "finally",    "float",
      "for",      "goto",       "if",        "implements", "import",
      "instanceof", "int",      "interface", "long",       "native",
      "new",      "package",    "private",   "protected",  "public",
      "return",   "short",      "static",    "strictfp",   "super",
      "switch",   "synchronized", "this",    "throw",      "throws",
      "transient", "try",       "void",      "volatile",   "while",
      "true",     "false",      "null"};
  return std::find(kKeywords.begin(), kKeywords.end(), w) != kKeywords.end();
}

namespace {

bool is_opener(char c) { return c == '(' || c == '[' || c == '{'; }
bool is_closer(char c) { return c == ')' || c == ']' || c == '}'; }

}  // namespace

std::size_t find_closing(std::string_view masked, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < masked.size(); ++i) {
    const char c = masked[i];
    if (is_opener(c)) {
      ++depth;
    } else if (is_closer(c)) {
      if (--depth == 0) return i;
      if (depth < 0) return std::string_view::npos;
    }
  }
  return std::string_view::npos;
}

std::size_t find_opening(std::string_view masked, std::size_t close) {
  int depth = 0;
  for (std::size_t i = close + 1; i-- > 0;) {
    const char c = masked[i];
    if (is_closer(c)) {
      ++depth;
    } else if (is_opener(c)) {
      if (--depth == 0) return i;
      if (depth < 0) return std::string_view::npos;
    }
  }
  return std::string_view::npos;
}

std::vector<std::size_t> top_level_positions(std::string_view masked,
                                             Span span, char c) {
  std::vector<std::size_t> out;
  int depth = 0;
  for (std::size_t i = span.begin; i < span.end; ++i) {
    const char ch = masked[i];
    if (is_opener(ch)) {
      ++depth;
    } else if (is_closer(ch)) {
      --depth;
    } else if (ch == c && depth == 0) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<Span> split_top_level(std::string_view masked, Span span,
                                  char c) {
  std::vector<Span> out;
  std::size_t start = span.begin;
  for (std::size_t p : top_level_positions(masked, span, c)) {
    out.push_back({start, p});
    start = p + 1;
  }
  out.push_back({start, span.end});
  return out;
}

std::vector<OperatorAt> top_level_binary_ops(std::string_view e) {
  static constexpr std::array<std::string_view, 38> kOps = {
      ">>>=", "<<=", ">>=", ">>>", "::", "->", "<<", ">>", "<=", ">=",
      "==",   "!=",  "&&",  "||",  "+=", "-=", "*=", "/=", "%=", "&=",
      "|=",   "^=",  "++",  "--",  "+",  "-",  "*",  "/",  "%",  "<",
      ">",    "&",   "|",   "^",   "=",  "?",  ":",  "!"};
  std::vector<OperatorAt> out;
  int depth = 0;
  bool prev_operand = false;
  std::size_t i = 0;
  const std::size_t n = e.size();
  while (i < n) {
    const char c = e[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (is_opener(c)) {
      // a bracketed group at top level acts as one operand
      ++depth;
      ++i;
      if (depth == 1) prev_operand = false;
      continue;
    }
    if (is_closer(c)) {
      --depth;
      ++i;
      if (depth == 0) prev_operand = true;
      continue;
    }
    if (depth > 0) {
      ++i;
      continue;
    }
    if (c == '"' || c == '\'') {
      // masked literal: skip to closing quote
      std::size_t j = i + 1;
      while (j < n && e[j] != c) ++j;
      i = j + 1;
      prev_operand = true;
      continue;
    }
    if (c >= '0' && c <= '9') {
      std::size_t j = i + 1;
      while (j < n) {
        const char d = e[j];
        if (is_ident_char(d) || d == '.') {
          ++j;
        } else if ((d == '+' || d == '-') && (e[j - 1] == 'e' || e[j - 1] == 'E') &&
                   !(e.substr(i, 2) == "0x" || e.substr(i, 2) == "0X")) {
          ++j;
        } else {
          break;
        }
      }
      i = j;
      prev_operand = true;
      continue;
    }
    if (c == '.' && i + 1 < n && e[i + 1] >= '0' && e[i + 1] <= '9') {
      std::size_t j = i + 1;
      while (j < n && (is_ident_char(e[j]) || e[j] == '.')) ++j;
      i = j;
      prev_operand = true;
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t j = i + 1;
      while (j < n && is_ident_char(e[j])) ++j;
      const std::string_view word = e.substr(i, j - i);
      if (word == "instanceof") {
        out.push_back({"instanceof", i});
        prev_operand = false;
      } else {
        prev_operand = true;
      }
      i = j;
      continue;
    }
    if (c == '.' || c == ',' || c == ';' || c == '@' || c == '~') {
      if (c == ',') out.push_back({",", i});
      ++i;
      if (c == ',') {
        prev_operand = false;
      }
      continue;
    }
    std::string_view op;
    for (std::string_view cand : kOps) {
      if (e.substr(i, cand.size()) == cand) {
        op = cand;
        break;
      }
    }
    if (op.empty()) {
      ++i;
      continue;
    }
    const std::size_t at = i;
    i += op.size();
    if (op == "++" || op == "--") continue;
    if (op == "::") {
      prev_operand = false;
      continue;
    }
    if (op == "!") {
      prev_operand = false;
      continue;
    }
    if ((op == "+" || op == "-") && !prev_operand) continue;
    out.push_back({std::string(op), at});
    prev_operand = false;
  }
  return out;
}

LineIndex::LineIndex(std::string_view text) {
  starts_.push_back(0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') starts_.push_back(i + 1);
  }
  lines_ = count_lines(text);
}

int LineIndex::line_of(std::size_t offset) const {
  auto it = std::upper_bound(starts_.begin(), starts_.end(), offset);
  return static_cast<int>(it - starts_.begin());
}

int count_lines(std::string_view text) {
  if (text.empty()) return 0;
  const auto newlines =
      static_cast<int>(std::count(text.begin(), text.end(), '\n'));
  return text.back() == '\n' ? newlines : newlines + 1;
}

bool keyword_at(std::string_view masked, std::size_t pos,
                std::string_view word) {
  if (masked.substr(pos, word.size()) != word) return false;
  if (pos > 0 && is_ident_char(masked[pos - 1])) return false;
  const std::size_t after = pos + word.size();
  return after >= masked.size() || !is_ident_char(masked[after]);
}

namespace {

std::size_t skip_ws(std::string_view s, std::size_t pos, std::size_t limit) {
  while (pos < limit && is_space(s[pos])) ++pos;
  return pos;
}

bool starts_control(std::string_view masked, std::size_t pos) {
  static constexpr std::array<std::string_view, 8> kControl = {
      "if", "for", "while", "do", "try", "switch", "synchronized", "else"};
  if (masked[pos] == '{') return true;
  return std::any_of(kControl.begin(), kControl.end(), [&](auto w) {
    return keyword_at(masked, pos, w);
  });
}

}  // namespace

std::size_t skip_label(std::string_view masked, std::size_t pos,
                       std::size_t limit) {
  if (pos >= limit || !is_ident_start(masked[pos])) return pos;
  std::size_t j = pos;
  while (j < limit && is_ident_char(masked[j])) ++j;
  const std::string_view word = masked.substr(pos, j - pos);
  if (is_java_keyword(word)) return pos;
  std::size_t k = skip_ws(masked, j, limit);
  if (k < limit && masked[k] == ':' &&
      (k + 1 >= limit || masked[k + 1] != ':')) {
    return skip_ws(masked, k + 1, limit);
  }
  return pos;
}

std::size_t statement_end(std::string_view masked, std::size_t pos,
                          std::size_t limit) {
  pos = skip_label(masked, pos, limit);
  if (pos >= limit) return limit;
  const bool control = starts_control(masked, pos);
  const bool is_do = keyword_at(masked, pos, "do");

  auto continues = [&](std::size_t after, bool after_brace) {
    const std::size_t k = skip_ws(masked, after, limit);
    if (k >= limit) return false;
    if (keyword_at(masked, k, "else") || keyword_at(masked, k, "catch") ||
        keyword_at(masked, k, "finally")) {
      return true;
    }
    return after_brace && is_do && keyword_at(masked, k, "while");
  };

  std::size_t i = pos;
  while (i < limit) {
    const char c = masked[i];
    if (c == '(' || c == '[') {
      const std::size_t close = find_closing(masked, i);
      if (close == std::string_view::npos || close >= limit) return limit;
      i = close + 1;
      continue;
    }
    if (c == '{') {
      const std::size_t close = find_closing(masked, i);
      if (close == std::string_view::npos || close >= limit) return limit;
      i = close + 1;
      if (control && !continues(i, true)) {
        // a control statement ends at its block unless a do-while tail or
        // an else/catch/finally clause follows
        return i;
      }
      continue;
    }
    if (c == ';') {
      ++i;
      if (control && continues(i, false)) continue;
      return i;
    }
    if (c == '}' || c == ')' || c == ']') return i;
    if (c == '"' || c == '\'') {
      std::size_t j = i + 1;
      if (masked.substr(i, 3) == "\"\"\"") {
        j = masked.find("\"\"\"", i + 3);
        i = (j == std::string_view::npos) ? limit : j + 3;
        continue;
      }
      while (j < limit && masked[j] != c && masked[j] != '\n') ++j;
      i = j + 1;
      continue;
    }
    ++i;
  }
  return limit;
}

std::vector<Span> split_statements(std::string_view masked, Span body) {
  std::vector<Span> out;
  std::size_t pos = body.begin;
  while (true) {
    pos = skip_ws(masked, pos, body.end);
    if (pos >= body.end) break;
    std::size_t end = statement_end(masked, pos, body.end);
    if (end <= pos) end = pos + 1;
    out.push_back(trim(masked, Span{pos, end}));
    pos = end;
  }
  return out;
}

}  // namespace fminer::text
