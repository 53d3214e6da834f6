// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

// Lexical helpers shared by the matcher and the constraint checker. All of
// them operate on comment-stripped Java text; none builds a syntax tree.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fminer::text {

/// Half-open byte range [begin, end) into a source buffer.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  [[nodiscard]] std::size_t size() const { return end - begin; }
  [[nodiscard]] bool empty() const { return end <= begin; }
  [[nodiscard]] std::string_view of(std::string_view s) const {
    return s.substr(begin, end - begin);
  }
  friend bool operator==(const Span&, const Span&) = default;
};

inline bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c == '$' || static_cast<unsigned char>(c) >= 0x80;
}

inline bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string_view trim(std::string_view s);
Span trim(std::string_view s, Span span);

/// Collapses every whitespace run to a single space and trims the ends.
std::string collapse_ws(std::string_view s);

/// Returns a copy of `code` with the same length in which the contents of
/// string, text-block and character literals are replaced by spaces. The
/// quote characters stay, so literal boundaries remain visible.
std::string mask_literals(std::string_view code);

bool is_java_keyword(std::string_view word);

/// Given `masked[open]` in "([{", returns the index of its matching closer,
/// or npos when the text ends first. Only brackets of all three kinds are
/// counted; generics' angle brackets are not.
std::size_t find_closing(std::string_view masked, std::size_t open);

/// Given `masked[close]` in ")]}", scans backwards to the matching opener.
std::size_t find_opening(std::string_view masked, std::size_t close);

/// Positions of `c` at bracket depth zero inside `span`.
std::vector<std::size_t> top_level_positions(std::string_view masked,
                                             Span span, char c);

/// Splits `span` at top-level occurrences of `c`; pieces are not trimmed.
std::vector<Span> split_top_level(std::string_view masked, Span span, char c);

struct OperatorAt {
  std::string op;
  std::size_t pos = 0;  ///< offset within the scanned expression
};

/// Binary operators occurring at bracket depth zero in `expr` (which must be
/// literal-masked). Unary +/-, ++/-- and the member dot are not reported.
/// Ternary `?` and `:` are reported as "?" and ":", a top-level comma as ",".
std::vector<OperatorAt> top_level_binary_ops(std::string_view masked_expr);

/// Maps byte offsets to 1-based line numbers.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text);
  [[nodiscard]] int line_of(std::size_t offset) const;
  [[nodiscard]] int line_count() const { return lines_; }

 private:
  std::vector<std::size_t> starts_;
  int lines_ = 0;
};

/// Number of lines in `text`: newline count plus one for an unterminated
/// final line. The empty string has zero lines.
int count_lines(std::string_view text);

/// End offset (exclusive) of the Java statement starting at `pos` (which
/// must point at non-whitespace). Handles braced blocks, control keywords
/// with `else`/`catch`/`finally`/do-`while` continuations and labels.
/// Never returns a value past `limit`.
std::size_t statement_end(std::string_view masked, std::size_t pos,
                          std::size_t limit);

/// Top-level statements of the region `body` (e.g. a loop body without its
/// braces), trimmed.
std::vector<Span> split_statements(std::string_view masked, Span body);

/// Skips a leading `label:` prefix of a statement, if any.
std::size_t skip_label(std::string_view masked, std::size_t pos,
                       std::size_t limit);

/// True when `masked` has the keyword `word` at `pos` with identifier
/// boundaries on both sides.
bool keyword_at(std::string_view masked, std::size_t pos,
                std::string_view word);

}  // namespace fminer::text
