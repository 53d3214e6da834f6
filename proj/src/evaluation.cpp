// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

#include "fminer/evaluation.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include "fminer/text.hpp"

namespace fminer {

namespace {

struct RawTag {
  std::size_t begin;  ///< offset within the line
  std::size_t end;
  bool closing;
  OracleTag tag;
  bool sp;
};

[[noreturn]] void fail(std::string_view file, int line, const std::string& what) {
  std::string where = file.empty() ? "line " : std::string(file) + ":";
  throw OracleError(where + std::to_string(line) + ": " + what);
}

// Finds oracle tags in one annotated line (without its newline).
std::vector<RawTag> scan_tags(std::string_view line, std::string_view file, int line_no) {
  static const std::regex tag_re(R"re(^<(/?)([A-Za-z_]\w*)((?:\s+[A-Za-z_][\w-]*\s*=\s*"[^"]*")*)\s*>)re");
  static const std::regex attr_re(R"re(([A-Za-z_][\w-]*)\s*=\s*"([^"]*)")re");
  std::vector<RawTag> out;
  for (std::size_t pos = line.find('<'); pos != std::string_view::npos; pos = line.find('<', pos + 1)) {
    // `List<Vector>` is a generic, but `x</Vector>` can only close a tag
    const bool slash = pos + 1 < line.size() && line[pos + 1] == '/';
    if (!slash && pos > 0 && text::is_ident_char(line[pos - 1])) continue;
    const std::string rest(line.substr(pos, std::min<std::size_t>(line.size() - pos, 512)));
    std::smatch m;
    if (!std::regex_search(rest, m, tag_re, std::regex_constants::match_continuous)) continue;
    const bool closing = m[1].length() > 0;
    const std::string name = m.str(2);
    const std::string attrs = m.str(3);
    const auto tag = parse_tag(name);
    if (!tag) {
      // `</Foo>` and `<Foo sp="..">` can only be meant as oracle tags
      if (closing || attrs.find("sp") != std::string::npos) fail(file, line_no, "unknown tag <" + name + ">");
      continue;
    }
    if (closing && !attrs.empty()) fail(file, line_no, "attributes on closing tag </" + name + ">");
    bool sp = false;
    for (std::sregex_iterator it(attrs.begin(), attrs.end(), attr_re), end; it != end; ++it) {
      const std::string key = (*it).str(1);
      const std::string value = (*it).str(2);
      if (key != "sp") fail(file, line_no, "unknown attribute '" + key + "'");
      if (value == "true") {
        sp = true;
      } else if (value != "false") {
        fail(file, line_no, "sp must be \"true\" or \"false\"");
      }
    }
    if (sp && !is_loop_tag(*tag)) fail(file, line_no, "sp=\"true\" on non-loop tag <" + name + ">");
    out.push_back({pos, pos + static_cast<std::size_t>(m.length(0)), closing, *tag, sp});
    pos += static_cast<std::size_t>(m.length(0)) - 1;
  }
  return out;
}

}  // namespace

std::string_view to_string(OracleTag tag) {
  switch (tag) {
    case OracleTag::SimpleNestedLoop: return "SimpleNestedLoop";
    case OracleTag::DoubleNestedLoop: return "DoubleNestedLoop";
    case OracleTag::SimpleArithmetic: return "SimpleArithmetic";
    case OracleTag::Matrix: return "Matrix";
    case OracleTag::Vector: return "Vector";
  }
  return "?";
}

std::optional<OracleTag> parse_tag(std::string_view name) {
  for (OracleTag t : {OracleTag::SimpleNestedLoop, OracleTag::DoubleNestedLoop,
                      OracleTag::SimpleArithmetic, OracleTag::Matrix, OracleTag::Vector}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

bool is_loop_tag(OracleTag tag) {
  return tag == OracleTag::SimpleNestedLoop || tag == OracleTag::DoubleNestedLoop;
}

ParsedOracle parse_oracle(std::string_view annotated, std::string_view file_key) {
  ParsedOracle out;
  std::vector<std::size_t> open;        // annotation indices
  std::vector<int> open_line;           // annotated line of each open tag
  int clean_line = 1;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < annotated.size()) {
    ++line_no;
    std::size_t nl = annotated.find('\n', pos);
    const std::size_t line_end = nl == std::string_view::npos ? annotated.size() : nl;
    const std::size_t next = nl == std::string_view::npos ? annotated.size() : nl + 1;
    const std::string_view line = annotated.substr(pos, line_end - pos);
    const std::vector<RawTag> tags = scan_tags(line, file_key, line_no);

    bool tag_only = !tags.empty();
    if (tag_only) {
      std::size_t cursor = 0;
      for (const RawTag& t : tags) {
        for (std::size_t k = cursor; k < t.begin; ++k) {
          if (!text::is_space(line[k])) tag_only = false;
        }
        cursor = t.end;
      }
      for (std::size_t k = cursor; k < line.size(); ++k) {
        if (!text::is_space(line[k])) tag_only = false;
      }
    }

    auto open_tag = [&](const RawTag& t, int start_line) {
      OracleAnnotation a;
      a.tag = t.tag;
      a.file = std::string(file_key);
      a.start_line = start_line;
      a.sp = t.sp;
      if (!open.empty()) a.parent = open.back();
      open.push_back(out.annotations.size());
      open_line.push_back(line_no);
      out.annotations.push_back(std::move(a));
    };
    auto close_tag = [&](const RawTag& t, int end_line) {
      if (open.empty()) fail(file_key, line_no, "closing </" + std::string(to_string(t.tag)) + "> without opening tag");
      OracleAnnotation& a = out.annotations[open.back()];
      if (a.tag != t.tag) {
        fail(file_key, line_no, "</" + std::string(to_string(t.tag)) + "> closes <" +
                                    std::string(to_string(a.tag)) + ">");
      }
      if (end_line < a.start_line) fail(file_key, line_no, "empty annotation");
      a.end_line = end_line;
      open.pop_back();
      open_line.pop_back();
    };

    if (tag_only) {
      out.events.push_back({out.clean_text.size(), std::string(annotated.substr(pos, next - pos))});
      for (const RawTag& t : tags) {
        if (t.closing) {
          close_tag(t, clean_line - 1);
        } else {
          open_tag(t, clean_line);
        }
      }
    } else {
      std::size_t cursor = 0;
      for (const RawTag& t : tags) {
        out.clean_text.append(line.substr(cursor, t.begin - cursor));
        out.events.push_back({out.clean_text.size(), std::string(line.substr(t.begin, t.end - t.begin))});
        if (t.closing) {
          close_tag(t, clean_line);
        } else {
          open_tag(t, clean_line);
        }
        cursor = t.end;
      }
      out.clean_text.append(annotated.substr(pos + cursor, next - pos - cursor));
      if (nl != std::string_view::npos) ++clean_line;
    }
    pos = next;
  }
  if (!open.empty()) {
    fail(file_key, open_line.back(),
         "unclosed <" + std::string(to_string(out.annotations[open.back()].tag)) + ">");
  }
  return out;
}

std::string reinsert_tags(const ParsedOracle& parsed) {
  std::string out;
  std::size_t cursor = 0;
  for (const TagEvent& e : parsed.events) {
    out.append(parsed.clean_text, cursor, e.offset - cursor);
    out += e.text;
    cursor = e.offset;
  }
  out.append(parsed.clean_text, cursor, std::string::npos);
  return out;
}

RecallResult recall(std::span<const PatternMatch> detected,
                    std::span<const OracleAnnotation> oracle) {
  RecallResult r;
  for (const auto& a : oracle) {
    if (a.sp) ++r.fragments;
  }
  std::set<std::size_t> hit;
  auto overlaps = [](const OracleAnnotation& a, const PatternMatch& m) {
    return a.start_line <= m.end_line && m.start_line <= a.end_line;
  };
  for (const PatternMatch& m : detected) {
    if (!is_sp(m.kind)) continue;
    const std::string key = m.project + "/" + m.path;
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      const OracleAnnotation& a = oracle[i];
      if (!a.sp || a.file != key || !overlaps(a, m)) continue;
      bool outer_hit = false;
      for (auto p = a.parent; p; p = oracle[*p].parent) {
        if (oracle[*p].sp && overlaps(oracle[*p], m)) {
          outer_hit = true;
          break;
        }
      }
      if (!outer_hit) hit.insert(i);
    }
  }
  r.hits = hit.size();
  r.hit_indices.assign(hit.begin(), hit.end());
  if (r.fragments > 0) r.recall = density(r.hits, r.fragments);
  return r;
}

std::string_view to_string(Judgment j) {
  switch (j) {
    case Judgment::kNoFormula: return "no-formula";
    case Judgment::kWrong: return "wrong";
    case Judgment::kCorrect: return "correct";
    case Judgment::kComplete: return "complete";
  }
  return "?";
}

std::optional<Judgment> parse_judgment(std::string_view s) {
  s = text::trim(s);
  for (Judgment j : {Judgment::kNoFormula, Judgment::kWrong, Judgment::kCorrect, Judgment::kComplete}) {
    if (to_string(j) == s) return j;
  }
  return std::nullopt;
}

PrecisionResult precision(std::span<const Judgment> judgments) {
  PrecisionResult r;
  r.detections = judgments.size();
  for (Judgment j : judgments) {
    if (j != Judgment::kNoFormula) ++r.formula_code;
    if (j == Judgment::kCorrect || j == Judgment::kComplete) ++r.correct;
    if (j == Judgment::kComplete) ++r.complete;
  }
  if (r.detections > 0) {
    r.any = density(r.formula_code, r.detections);
    r.correct_formula = density(r.correct, r.detections);
    r.complete_formula = density(r.complete, r.detections);
  }
  return r;
}

PrecisionResult precision(std::span<const PatternMatch> detected,
                          const std::map<std::string, Judgment>& judgments) {
  std::vector<Judgment> js;
  std::vector<std::string> missing;
  for (const PatternMatch& m : detected) {
    if (!is_sp(m.kind)) continue;
    const auto it = judgments.find(m.id());
    if (it == judgments.end()) {
      missing.push_back(m.id());
    } else {
      js.push_back(it->second);
    }
  }
  if (!missing.empty()) {
    std::string msg = "unjudged detections:";
    for (const auto& id : missing) msg += "\n  " + id;
    throw OracleError(msg);
  }
  return precision(js);
}

std::map<std::string, Judgment> parse_judgments(std::string_view csv) {
  std::map<std::string, Judgment> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t nl = csv.find('\n', pos);
    const std::string_view line =
        text::trim(csv.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? csv.size() + 1 : nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t comma = line.rfind(',');
    if (comma == std::string_view::npos) {
      throw OracleError("judgments line " + std::to_string(line_no) + ": expected 'match-id,judgment'");
    }
    const std::string_view id = text::trim(line.substr(0, comma));
    const std::string_view value = text::trim(line.substr(comma + 1));
    const auto j = parse_judgment(value);
    if (!j) {
      if (line_no == 1 && value == "judgment") continue;  // header
      throw OracleError("judgments line " + std::to_string(line_no) + ": unknown judgment '" +
                        std::string(value) + "'");
    }
    out[std::string(id)] = *j;
  }
  return out;
}

std::vector<std::string> parse_oracle_manifest(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text::trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    if (line.empty() || line.front() == '#') continue;
    out.emplace_back(line);
  }
  return out;
}

}  // namespace fminer
