// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

#include "fminer/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iterator>
#include <mutex>
#include <sstream>
#include <thread>

#include "fminer/formula.hpp"

namespace fminer {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw CorpusError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string root_name(const fs::path& root) {
  fs::path p = root.lexically_normal();
  if (p.filename().empty()) p = p.parent_path();
  std::string name = p.filename().string();
  if (name.empty() || name == "." || name == "..") {
    std::error_code ec;
    name = fs::weakly_canonical(root, ec).filename().string();
  }
  return name.empty() ? std::string("root") : name;
}

}  // namespace

std::string describe_failures(const ConstraintReport& report) {
  std::string out;
  for (const Verdict& v : report.verdicts) {
    if (v.pass) continue;
    if (!out.empty()) out += "; ";
    out += v.id + " {";
    bool first = true;
    for (const auto& s : v.offending) {
      if (!first) out += ", ";
      out += s;
      first = false;
    }
    out += "}";
    if (!v.note.empty()) out += " (" + v.note + ")";
  }
  return out;
}

FileAnalysis analyze_unit(const SourceUnit& unit, const std::set<PatternKind>& enabled) {
  FileAnalysis a;
  a.result.project = unit.project;
  a.result.path = unit.relative_path;
  a.result.loc = static_cast<std::uint64_t>(unit.loc);

  std::vector<PatternMatch> accepted;
  for (PatternMatch& m : match_all(unit, enabled)) {
    if (m.kind == PatternKind::LOOP_SIMPLE) {
      ++a.result.loops_simple;
      continue;
    }
    if (m.kind == PatternKind::LOOP_NESTED) {
      ++a.result.loops_nested;
      continue;
    }
    const ConstraintReport report = check(m);
    if (report.accepted()) {
      accepted.push_back(std::move(m));
    } else {
      a.rejections.push_back(report.match_id + " rejected: " + describe_failures(report));
    }
  }
  a.result.accepted = resolve_precedence(std::move(accepted));
  for (const PatternMatch& m : a.result.accepted) {
    a.rows.push_back(make_row(m, make_record(m)));
  }
  return a;
}

std::pair<std::string, std::string> split_project(const std::string& relative,
                                                  const std::string& root) {
  const auto slash = relative.find('/');
  if (slash == std::string::npos) return {root, relative};
  return {relative.substr(0, slash), relative.substr(slash + 1)};
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

ScanResult run_scan(const ScanConfig& config) {
  ScanResult out;
  std::vector<ScanInput> inputs;
  std::set<std::string> projects;
  for (const fs::path& root : config.roots) {
    const std::string name = root_name(root);
    for (const fs::path& file : discover(root, &out.diagnostics)) {
      const std::string rel = file.lexically_relative(root).generic_string();
      auto [project, path] = config.root_is_project ? std::pair{name, rel} : split_project(rel, name);
      inputs.push_back({file, project, path});
    }
    if (config.root_is_project) {
      projects.insert(name);
    } else {
      // immediate subdirectories are projects even without Java files
      std::error_code ec;
      for (const auto& entry : fs::directory_iterator(root, ec)) {
        std::error_code type_ec;
        if (entry.is_directory(type_ec)) projects.insert(entry.path().filename().string());
      }
    }
  }
  for (const auto& in : inputs) projects.insert(in.project);
  out.projects.assign(projects.begin(), projects.end());

  std::vector<std::optional<SourceUnit>> loaded(inputs.size());
  std::vector<std::string> load_errors(inputs.size());
  parallel_for(inputs.size(), config.workers, [&](std::size_t i) {
    try {
      loaded[i] = load_unit(inputs[i].file, inputs[i].project, inputs[i].relative_path);
    } catch (const CorpusError& e) {
      load_errors[i] = e.what();
    }
  });
  std::vector<SourceUnit> units;
  units.reserve(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (!load_errors[i].empty()) out.diagnostics.warn(load_errors[i]);
    if (!loaded[i]) continue;
    const SourceUnit& u = *loaded[i];
    if (u.replaced_invalid_utf8) {
      out.diagnostics.warn(u.project + "/" + u.relative_path + ": invalid UTF-8 replaced");
    }
    if (u.unterminated_comment) {
      out.diagnostics.warn(u.project + "/" + u.relative_path + ": unterminated block comment");
    }
    units.push_back(std::move(*loaded[i]));
  }
  loaded.clear();
  if (config.dedup) units = dedup(std::move(units));

  std::vector<FileAnalysis> analyses(units.size());
  parallel_for(units.size(), config.workers,
               [&](std::size_t i) { analyses[i] = analyze_unit(units[i], config.enabled); });

  for (FileAnalysis& a : analyses) {
    std::move(a.rows.begin(), a.rows.end(), std::back_inserter(out.rows));
    std::move(a.rejections.begin(), a.rejections.end(), std::back_inserter(out.rejections));
    out.files.push_back(std::move(a.result));
  }
  out.totals = aggregate(out.files, out.projects);
  return out;
}

EvalResult run_eval(const fs::path& root, const fs::path& manifest,
                    const std::optional<fs::path>& judgments,
                    const std::set<PatternKind>& enabled) {
  EvalResult out;
  const std::string name = root_name(root);
  for (const std::string& rel : parse_oracle_manifest(read_file(manifest))) {
    auto [project, path] = split_project(rel, name);
    const std::string key = project + "/" + path;
    const ParsedOracle parsed = parse_oracle(read_file(root / rel), key);
    out.annotations.insert(out.annotations.end(), parsed.annotations.begin(), parsed.annotations.end());
    // parent indices are file-local; rebase them
    const std::size_t base = out.annotations.size() - parsed.annotations.size();
    for (std::size_t k = base; k < out.annotations.size(); ++k) {
      if (out.annotations[k].parent) *out.annotations[k].parent += base;
    }
    const SourceUnit unit = make_unit(project, path, parsed.clean_text);
    FileAnalysis a = analyze_unit(unit, enabled);
    std::move(a.result.accepted.begin(), a.result.accepted.end(), std::back_inserter(out.detected));
  }
  out.recall = recall(out.detected, out.annotations);
  if (judgments) out.precision = precision(out.detected, parse_judgments(read_file(*judgments)));
  return out;
}

}  // namespace fminer
