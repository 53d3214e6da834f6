// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

#include "fminer/reporting.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <stdexcept>
#include <tuple>

namespace fminer {

namespace {

std::string pct(const std::optional<Fraction>& f) {
  return f ? format_percent(*f) : std::string("undefined");
}

int parse_line_number(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("csv: bad line number '" + std::string(s) + "'");
  }
  return v;
}

// Splits CSV text into records of fields, honouring quotes.
std::vector<std::vector<std::string>> parse_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(fields));
      fields.clear();
      any = false;
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (quoted) throw std::runtime_error("csv: unterminated quoted field");
  if (any || !fields.empty() || !field.empty()) {
    fields.push_back(std::move(field));
    records.push_back(std::move(fields));
  }
  return records;
}

}  // namespace

CsvRow make_row(const PatternMatch& match, const FormulaRecord& record) {
  return CsvRow{match.project, match.path, match.kind, match.start_line, match.end_line,
                match.snippet, record.text, record.mathml};
}

std::string csv_quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::size_t emit_csv(std::vector<CsvRow> rows, std::ostream& out) {
  std::stable_sort(rows.begin(), rows.end(), [](const CsvRow& a, const CsvRow& b) {
    return std::tie(a.project, a.file, a.start_line, a.kind) <
           std::tie(b.project, b.file, b.start_line, b.kind);
  });
  out << kCsvHeader << '\n';
  for (const CsvRow& r : rows) {
    out << csv_quote(r.project) << ',' << csv_quote(r.file) << ',' << to_string(r.kind) << ','
        << r.start_line << ',' << r.end_line << ',' << csv_quote(r.snippet) << ','
        << csv_quote(r.formula) << ',' << csv_quote(r.mathml) << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing CSV output (output may be partial)");
  return rows.size();
}

std::vector<CsvRow> read_csv(std::string_view text) {
  auto records = parse_records(text);
  if (records.empty()) throw std::runtime_error("csv: missing header");
  std::string header;
  for (std::size_t i = 0; i < records[0].size(); ++i) {
    if (i) header += ',';
    header += records[0][i];
  }
  if (header != kCsvHeader) throw std::runtime_error("csv: unexpected header '" + header + "'");
  std::vector<CsvRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    if (f.size() != 8) throw std::runtime_error("csv: record " + std::to_string(i) + " has " + std::to_string(f.size()) + " fields");
    const auto kind = parse_kind(f[2]);
    if (!kind) throw std::runtime_error("csv: unknown pattern '" + f[2] + "'");
    rows.push_back(CsvRow{f[0], f[1], *kind, parse_line_number(f[3]), parse_line_number(f[4]), f[5], f[6], f[7]});
  }
  return rows;
}

void emit_summary(const SummaryInput& in, std::ostream& out) {
  const ScanTotals& t = in.totals;
  const DensityReport& d = in.densities;
  const LoopFractions& l = in.loops;

  auto row = [&](std::string_view name, const std::string& value) {
    out << std::left << std::setw(24) << name << value << '\n';
  };

  out << "formula-miner scan summary\n";
  out << "LOC = non-blank lines after comment removal (not cloc-compatible)\n\n";
  row("#projects", std::to_string(t.projects));
  row("#nonempty", std::to_string(t.nonempty_projects));
  row("#fc projects", std::to_string(t.fc_projects));
  row("#files", std::to_string(t.files));
  row("#fc files", std::to_string(t.fc_files));
  row("LOC", std::to_string(t.loc));
  row("LOFC", std::to_string(t.lofc));
  row("#matches", std::to_string(t.matches));
  row("rho_files", pct(d.rho_files));
  row("rho_LOC", pct(d.rho_loc));
  row("est. rho_files", pct(d.rho_files_est));
  row("est. rho_LOC", pct(d.rho_loc_est));
  row("recall used", format_percent(d.recall));

  std::vector<PatternKind> kinds;
  for (PatternKind k : kAllKinds) {
    if (is_sp(k) && (!is_experimental(k) || t.per_pattern.count(k))) kinds.push_back(k);
  }
  auto pattern_rho = [&](PatternKind k) -> std::optional<Fraction> {
    if (t.loc == 0) return std::nullopt;
    const auto it = t.per_pattern.find(k);
    return density(it == t.per_pattern.end() ? 0 : it->second.lofc, t.loc);
  };
  auto pattern_totals = [&](PatternKind k) {
    const auto it = t.per_pattern.find(k);
    return it == t.per_pattern.end() ? PatternTotals{} : it->second;
  };

  out << "\npattern    matches     LOFC  rho_LOC\n";
  for (PatternKind k : kinds) {
    const PatternTotals pt = pattern_totals(k);
    out << std::left << std::setw(9) << to_string(k) << std::right << std::setw(9) << pt.matches
        << std::setw(9) << pt.lofc << "  " << pct(pattern_rho(k)) << '\n';
  }

  out << "\nloops      count  SP matches  fraction  est. fraction\n";
  out << std::left << std::setw(9) << "simple" << std::right << std::setw(7) << t.loops_simple
      << std::setw(12) << t.sp_simple << "  " << std::left << std::setw(10) << pct(l.simple)
      << pct(l.simple_est) << '\n';
  out << std::left << std::setw(9) << "nested" << std::right << std::setw(7) << t.loops_nested
      << std::setw(12) << t.sp_nested << "  " << std::left << std::setw(10) << pct(l.nested)
      << pct(l.nested_est) << '\n';
  out << std::right;

  out << "\nprojects=" << t.projects << '\n';
  out << "nonempty=" << t.nonempty_projects << '\n';
  out << "fc_projects=" << t.fc_projects << '\n';
  out << "files=" << t.files << '\n';
  out << "fc_files=" << t.fc_files << '\n';
  out << "LOC=" << t.loc << '\n';
  out << "LOFC=" << t.lofc << '\n';
  out << "matches=" << t.matches << '\n';
  out << "rho_files=" << pct(d.rho_files) << '\n';
  out << "rho_LOC=" << pct(d.rho_loc) << '\n';
  out << "rho_files_est=" << pct(d.rho_files_est) << '\n';
  out << "rho_LOC_est=" << pct(d.rho_loc_est) << '\n';
  out << "recall=" << format_percent(d.recall) << '\n';
  for (PatternKind k : kinds) {
    const PatternTotals pt = pattern_totals(k);
    out << "pattern." << to_string(k) << ".matches=" << pt.matches << '\n';
    out << "pattern." << to_string(k) << ".LOFC=" << pt.lofc << '\n';
    out << "pattern." << to_string(k) << ".rho_LOC=" << pct(pattern_rho(k)) << '\n';
  }
  out << "loops_simple=" << t.loops_simple << '\n';
  out << "loops_nested=" << t.loops_nested << '\n';
  out << "sp_simple=" << t.sp_simple << '\n';
  out << "sp_nested=" << t.sp_nested << '\n';
  out << "loop_fraction_simple=" << pct(l.simple) << '\n';
  out << "loop_fraction_nested=" << pct(l.nested) << '\n';
  out << "loop_fraction_simple_est=" << pct(l.simple_est) << '\n';
  out << "loop_fraction_nested_est=" << pct(l.nested_est) << '\n';
}

}  // namespace fminer
