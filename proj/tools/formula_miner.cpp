// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

// formula-miner: detect sum/product formula code in Java corpora.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "fminer/pipeline.hpp"
#include "fminer/text.hpp"

namespace {

using namespace fminer;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

unsigned default_workers() {
  if (const char* env = std::getenv("FORMULA_MINER_WORKERS"); env && *env) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring FORMULA_MINER_WORKERS='" << env << "'\n";
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::set<PatternKind> parse_pattern_list(const std::string& list, bool vectors) {
  std::set<PatternKind> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto trimmed = text::trim(item);
    if (trimmed.empty()) continue;
    const auto kind = parse_kind(trimmed);
    if (!kind) throw UsageError("unknown pattern '" + std::string(trimmed) + "'");
    out.insert(*kind);
  }
  if (out.empty()) throw UsageError("--patterns lists no pattern");
  if (vectors) {
    out.insert(PatternKind::VEC_ADD);
    out.insert(PatternKind::VEC_DOT);
  }
  return out;
}

Fraction parse_recall(const std::string& s) {
  Fraction r;
  try {
    r = Fraction::parse(s);
  } catch (const MetricsError&) {
    throw UsageError("--recall: not a number: '" + s + "'");
  }
  if (r <= Fraction(0) || r > Fraction(1)) throw UsageError("--recall must lie in (0, 1]");
  return r;
}

struct ScanOptions {
  std::vector<std::string> roots;
  std::string csv = "formula-miner.csv";
  std::string report;
  std::string recall = "0.3091";
  unsigned workers = 1;
  bool dedup = false;
  bool vectors = false;
  bool root_is_project = false;
  std::string patterns;
  bool verbose = false;
};

int cmd_scan(const ScanOptions& o) {
  ScanConfig config;
  for (const auto& r : o.roots) config.roots.emplace_back(r);
  config.recall = parse_recall(o.recall);
  if (o.workers < 1) throw UsageError("--workers must be at least 1");
  config.workers = o.workers;
  config.dedup = o.dedup;
  config.root_is_project = o.root_is_project;
  if (!o.patterns.empty()) {
    config.enabled = parse_pattern_list(o.patterns, o.vectors);
  } else if (o.vectors) {
    config.enabled.insert(PatternKind::VEC_ADD);
    config.enabled.insert(PatternKind::VEC_DOT);
  }

  const ScanResult result = run_scan(config);
  for (const auto& w : result.diagnostics.warnings) std::cerr << "warning: " << w << '\n';
  if (o.verbose) {
    for (const auto& r : result.rejections) std::cerr << r << '\n';
  }

  const bool csv_stdout = o.csv == "-";
  if (csv_stdout) {
    emit_csv(result.rows, std::cout);
  } else {
    std::ofstream csv(o.csv, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + o.csv);
    emit_csv(result.rows, csv);
  }

  SummaryInput summary{result.totals, densities(result.totals, config.recall),
                       loop_fractions(result.totals, config.recall)};
  if (!o.report.empty()) {
    std::ofstream rep(o.report, std::ios::binary);
    if (!rep) throw std::runtime_error("cannot write " + o.report);
    emit_summary(summary, rep);
    if (!rep.flush()) throw std::runtime_error("failed writing " + o.report);
  } else {
    emit_summary(summary, csv_stdout ? std::cerr : std::cout);
  }
  return kExitOk;
}

int cmd_fetch(const std::string& manifest, const std::string& dest) {
  const RepoManifest m = read_manifest(manifest);
  const FetchOutcome outcome = fetch(m, dest);
  for (const auto& p : outcome.cloned) std::cout << "cloned " << p.string() << '\n';
  for (const auto& f : outcome.failures) std::cerr << "failed: " << f << '\n';
  std::cout << outcome.cloned.size() << " of " << m.entries.size() << " repositories cloned\n";
  return outcome.cloned.empty() ? kExitFailure : kExitOk;
}

void print_fraction(const char* key, const std::optional<Fraction>& f, std::uint64_t num,
                    std::uint64_t den) {
  std::cout << key << '=';
  if (f) {
    std::cout << num << '/' << den << " (" << format_percent(*f) << ")\n";
  } else {
    std::cout << "n/a\n";
  }
}

int cmd_eval(const std::string& root, const std::string& manifest, const std::string& judgments) {
  std::optional<fs::path> jpath;
  if (!judgments.empty()) jpath = judgments;
  const EvalResult r = run_eval(root, manifest, jpath);
  std::size_t sp = 0;
  for (const auto& a : r.annotations) sp += a.sp ? 1 : 0;
  std::cout << "annotations=" << r.annotations.size() << '\n';
  std::cout << "sp_fragments=" << sp << '\n';
  std::cout << "detections=" << r.detected.size() << '\n';
  std::cout << "hits=" << r.recall.hits << '\n';
  print_fraction("recall", r.recall.recall, r.recall.hits, r.recall.fragments);
  if (r.precision) {
    const PrecisionResult& p = *r.precision;
    print_fraction("precision_any", p.any, p.formula_code, p.detections);
    print_fraction("precision_correct", p.correct_formula, p.correct, p.detections);
    print_fraction("precision_complete", p.complete_formula, p.complete, p.detections);
  }
  std::cout << "hit_criterion=any shared line with the outermost sp fragment\n";
  return kExitOk;
}

int cmd_patterns() {
  for (const CatalogEntry& e : pattern_catalog()) {
    std::cout << to_string(e.kind) << (is_experimental(e.kind) ? "  (experimental)" : "") << '\n'
              << "  description: " << e.description << '\n'
              << "  shape:       " << e.shape << '\n'
              << "  slots:       " << e.slots << '\n';
    const auto ids = constraint_ids(e.kind);
    if (!ids.empty()) {
      std::cout << "  constraints:";
      for (auto id : ids) std::cout << ' ' << id;
      std::cout << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detect sum/product formula code in Java source corpora"};
  app.require_subcommand(1);

  std::string fetch_manifest;
  std::string fetch_dest;
  auto* fetch_cmd = app.add_subcommand("fetch", "Shallow-clone the repositories of a manifest");
  fetch_cmd->add_option("manifest", fetch_manifest, "Manifest: one URL[<TAB>branch] per line")->required();
  fetch_cmd->add_option("dest", fetch_dest, "Destination directory")->required();

  ScanOptions scan;
  scan.workers = default_workers();
  auto* scan_cmd = app.add_subcommand("scan", "Scan Java corpora and report formula code");
  scan_cmd->add_option("roots", scan.roots, "Corpus roots; each subdirectory is a project")->required();
  scan_cmd->add_option("--csv", scan.csv, "CSV output path ('-' for stdout)")->capture_default_str();
  scan_cmd->add_option("--report", scan.report, "Summary output path (default: stdout)");
  scan_cmd->add_option("--recall", scan.recall, "Recall used for estimated densities")->capture_default_str();
  scan_cmd->add_option("--workers", scan.workers, "Worker threads (env FORMULA_MINER_WORKERS)")->capture_default_str();
  scan_cmd->add_flag("--dedup", scan.dedup, "Skip files whose content duplicates another file");
  scan_cmd->add_flag("--vectors", scan.vectors, "Enable the experimental vector patterns");
  scan_cmd->add_flag("--root-is-project", scan.root_is_project, "Treat each root as one project");
  scan_cmd->add_option("--patterns", scan.patterns, "Comma-separated pattern kinds to run");
  scan_cmd->add_flag("-v,--verbose", scan.verbose, "Report rejected matches and their constraints");

  std::string eval_root;
  std::string eval_manifest;
  std::string eval_judgments;
  auto* eval_cmd = app.add_subcommand("eval", "Recall/precision against an annotated oracle");
  eval_cmd->add_option("root", eval_root, "Oracle corpus root")->required();
  eval_cmd->add_option("manifest", eval_manifest, "Annotated files, relative to root")->required();
  eval_cmd->add_option("--judgments", eval_judgments, "CSV of match-id,judgment");

  auto* patterns_cmd = app.add_subcommand("patterns", "Print the pattern catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*fetch_cmd) return cmd_fetch(fetch_manifest, fetch_dest);
    if (*scan_cmd) return cmd_scan(scan);
    if (*eval_cmd) return cmd_eval(eval_root, eval_manifest, eval_judgments);
    if (*patterns_cmd) return cmd_patterns();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
