// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

// Acceptance runner: one PASS/FAIL line per criterion, details indented
// below it. Exits 0 when the failing criteria are exactly the ones named by
// --known-red.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fminer/pipeline.hpp"
#include "fminer/text.hpp"
#include "support/paths.hpp"
#include "support/rational_eval.hpp"
#include "support/xml_check.hpp"

using namespace fminer;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects sub-check lines for one criterion.
class Criterion {
 public:
  void check(bool ok, const std::string& what) {
    ok_ = ok_ && ok;
    lines_.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void info(const std::string& what) { lines_.push_back("info " + what); }
  [[nodiscard]] bool ok() const { return ok_; }
  [[nodiscard]] const std::vector<std::string>& lines() const { return lines_; }

 private:
  bool ok_ = true;
  std::vector<std::string> lines_;
};

// |value - percent| <= tol, all in percentage points.
bool within_pp(Fraction value, Fraction percent, Fraction tol) {
  Fraction d = value * Fraction(100) - percent;
  if (d < Fraction(0)) d = Fraction(0) - d;
  return d <= tol;
}

std::string pp(Fraction value) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << value.to_double() * 100 << '%';
  return s.str();
}

void expect_pp(Criterion& c, const std::string& name, Fraction value, Fraction percent, Fraction tol) {
  std::ostringstream s;
  s << name << " = " << pp(value) << " (shown " << format_percent(value) << "), expected "
    << std::fixed << std::setprecision(4) << percent.to_double() << "% +/- " << tol.to_double() << "pp";
  c.check(within_pp(value, percent, tol), s.str());
}

ScanConfig fixture_config(unsigned workers, bool vectors) {
  ScanConfig c;
  c.roots = {fmtest::fixtures() / "corpus"};
  c.workers = workers;
  if (vectors) {
    c.enabled.insert(PatternKind::VEC_ADD);
    c.enabled.insert(PatternKind::VEC_DOT);
  }
  return c;
}

std::string csv_text(const ScanResult& r) {
  std::ostringstream out;
  emit_csv(r.rows, out);
  return out.str();
}

std::string summary_text(const ScanResult& r) {
  std::ostringstream out;
  emit_summary({r.totals, densities(r.totals, kDefaultRecall), loop_fractions(r.totals, kDefaultRecall)}, out);
  return out.str();
}

// ---------------------------------------------------------------------------

Criterion metric_reproduction() {
  Criterion c;
  const Fraction recall = Fraction::parse("30.91%");
  const Fraction tol(1, 100);
  const auto t0 = Clock::now();

  struct Sample {
    const char* name;
    std::uint64_t files, fc_files, loc, lofc;
    Fraction rho_files, rho_loc, rho_loc_est;  // published, in percent
  };
  const Sample samples[] = {
      {"Stargazers", 199457, 1713, 30275938, 13094, Fraction(85, 100), Fraction(43, 1000), Fraction(14, 100)},
      {"SciC", 4050, 199, 548976, 1794, Fraction(491, 100), Fraction(32, 100), Fraction(103, 100)},
  };
  for (const Sample& s : samples) {
    ScanTotals t;
    t.files = s.files;
    t.fc_files = s.fc_files;
    t.loc = s.loc;
    t.lofc = s.lofc;
    const DensityReport d = densities(t, recall);
    const std::string n = s.name;
    expect_pp(c, n + " rho_files", *d.rho_files, s.rho_files, tol);
    expect_pp(c, n + " rho_LOC", *d.rho_loc, s.rho_loc, tol);
    expect_pp(c, n + " est. rho_LOC", *d.rho_loc_est, s.rho_loc_est, tol);
  }
  // The published SciC estimate divides the already shortened 0.32% by the
  // recall; the exact counts give 1.057%.
  c.info("estimate(0.32%, 30.91%) = " + pp(estimate(Fraction(32, 10000), recall)));

  const double secs = seconds_since(t0);
  std::ostringstream s;
  s << "runtime " << std::fixed << std::setprecision(6) << secs << " s < 1 s";
  c.check(secs < 1.0, s.str());
  return c;
}

Criterion oracle_arithmetic() {
  Criterion c;
  std::vector<OracleAnnotation> oracle;
  std::vector<PatternMatch> hits;
  for (int k = 0; k < 110; ++k) {
    OracleAnnotation a;
    a.file = "p/F.java";
    a.start_line = 10 * k + 1;
    a.end_line = 10 * k + 5;
    a.sp = true;
    oracle.push_back(a);
    if (k < 34) {
      PatternMatch m;
      m.project = "p";
      m.path = "F.java";
      m.start_line = 10 * k + 2;
      m.end_line = 10 * k + 4;
      hits.push_back(m);
    }
  }
  const RecallResult r = recall(hits, oracle);
  c.check(r.hits == 34 && r.fragments == 110, "recall counts 34/110");
  expect_pp(c, "recall", *r.recall, Fraction(3091, 100), Fraction(1, 100));

  std::vector<Judgment> js(153, Judgment::kComplete);
  js.insert(js.end(), 23, Judgment::kCorrect);
  js.insert(js.end(), 5, Judgment::kWrong);
  const PrecisionResult p = precision(js);
  const Fraction tol(2, 100);
  expect_pp(c, "precision (formula code)", *p.any, Fraction(100), tol);
  expect_pp(c, "precision (correct formula)", *p.correct_formula, Fraction(9724, 100), tol);
  expect_pp(c, "precision (complete formula)", *p.complete_formula, Fraction(8453, 100), tol);

  expect_pp(c, "density(53, 878)", density(53, 878), Fraction(604, 100), Fraction(1, 100));
  expect_pp(c, "density(1064, 142419)", density(1064, 142419), Fraction(75, 100), Fraction(1, 100));
  return c;
}

Criterion fixture_suite() {
  Criterion c;
  const fs::path corpus = fmtest::fixtures() / "corpus";

  struct Tally {
    int accepted = 0;
    std::set<std::string> reject_ids;  // failing-id signature per rejected fixture
    int rejected = 0;
  };
  std::map<PatternKind, Tally> tally;
  int rows = 0;
  int mismatches = 0;

  std::istringstream in(fmtest::slurp(fmtest::fixtures() / "verdicts.txt"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string where;
    std::string kind_name;
    ls >> where >> kind_name;
    std::string expected;
    std::getline(ls, expected);
    expected = std::string(text::trim(expected));
    const auto colon = where.rfind(':');
    const std::string file = where.substr(0, colon);
    const int start = std::stoi(where.substr(colon + 1));
    const auto kind = parse_kind(kind_name);
    ++rows;

    std::string actual = "no match";
    ConstraintReport report;
    if (kind) {
      const SourceUnit u = make_unit("fixture", file, fmtest::slurp(corpus / file));
      for (const PatternMatch& m : match_kind(*kind, u)) {
        if (m.start_line != start) continue;
        report = check(m);
        actual = report.accepted() ? "accept" : describe_failures(report);
      }
    }
    if (actual != expected) {
      ++mismatches;
      c.check(false, where + " " + kind_name + ": expected '" + expected + "', got '" + actual + "'");
    }
    if (!kind || file.rfind("kinds/", 0) != 0) continue;
    Tally& t = tally[*kind];
    if (actual == "accept") {
      ++t.accepted;
    } else if (actual != "no match") {
      ++t.rejected;
      std::string sig;
      for (const auto& id : report.failed_ids()) sig += id + " ";
      t.reject_ids.insert(sig);
    }
  }
  c.check(mismatches == 0, std::to_string(rows - mismatches) + "/" + std::to_string(rows) +
                               " fixture verdicts as expected");

  for (PatternKind k : kAllKinds) {
    if (!is_sp(k) || is_experimental(k)) continue;
    const Tally& t = tally[k];
    std::ostringstream s;
    s << to_string(k) << ": " << t.accepted << " accepted, " << t.rejected << " rejected with "
      << t.reject_ids.size() << " distinct failing constraint sets";
    c.check(t.accepted >= 1 && t.rejected >= 2 && t.reject_ids.size() >= 2, s.str());
  }

  const ScanResult plain = run_scan(fixture_config(1, false));
  const ScanResult vectors = run_scan(fixture_config(1, true));
  const fs::path golden = fmtest::fixtures() / "golden";
  c.check(csv_text(plain) == fmtest::slurp(golden / "scan.csv"), "CSV equals golden/scan.csv");
  c.check(summary_text(plain) == fmtest::slurp(golden / "summary.txt"), "summary equals golden/summary.txt");
  c.check(csv_text(vectors) == fmtest::slurp(golden / "scan_vectors.csv"),
          "vector CSV equals golden/scan_vectors.csv");

  const SourceUnit lum = make_unit("samples", "Luminance.java", fmtest::slurp(corpus / "samples/Luminance.java"));
  const auto fis = match_kind(PatternKind::FIS, lum);
  bool lum_ok = fis.size() == 1;
  if (lum_ok) {
    const ConstraintReport r = check(fis[0]);
    const Verdict* c5 = r.find("C5");
    lum_ok = r.failed_ids() == std::vector<std::string>{"C5"} && c5 && c5->offending == SymbolSet{"pixel"};
  }
  c.check(lum_ok, "luminance loop rejected at C5 with offending {pixel}");

  std::set<PatternKind> every(kAllKinds.begin(), kAllKinds.end());
  const SourceUnit fc = make_unit("samples", "FloatCounter.java", fmtest::slurp(corpus / "samples/FloatCounter.java"));
  c.check(match_all(fc, every).empty(), "float counter has zero matches");
  return c;
}

Criterion precedence() {
  Criterion c;
  ScanConfig cfg;
  const fs::path dir = fmtest::scratch("acceptance_precedence");
  fs::copy_file(fmtest::fixtures() / "corpus/misc/Precedence.java", dir / "Precedence.java");
  cfg.roots = {dir};
  cfg.root_is_project = true;
  const ScanResult r = run_scan(cfg);
  c.check(r.rows.size() == 1, std::to_string(r.rows.size()) + " row(s)");
  if (r.rows.size() == 1) {
    const CsvRow& row = r.rows[0];
    c.check(row.kind == PatternKind::NFISS && row.start_line == 3 && row.end_line == 9,
            std::string(to_string(row.kind)) + " lines " + std::to_string(row.start_line) + "-" +
                std::to_string(row.end_line));
  }
  fs::remove_all(dir);
  return c;
}

// Random FIS loops checked against direct execution.
struct FisCase {
  std::string java;
  std::function<fmtest::Rational(const fmtest::Env&)> run;
};

Criterion formula_semantics(std::vector<std::string>& mathml_out) {
  Criterion c;
  using fmtest::Rational;
  std::mt19937 rng(20261017);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  int agree = 0;
  int total = 0;
  std::set<std::string> shapes;
  std::vector<std::string> failures;
  for (int n_case = 0; n_case < 200; ++n_case) {
    fmtest::Env env;
    std::vector<Rational> a(12);
    std::vector<Rational> b(12);
    for (auto& v : a) v = pick(-9, 9);
    for (auto& v : b) v = pick(1, 9);
    env.arrays["a"] = a;
    env.arrays["b"] = b;
    const int k = pick(1, 9);
    env.scalars["k"] = k;
    const int s0 = pick(-9, 9) == 0 ? 1 : pick(-9, 9);
    env.scalars["s_0"] = s0;

    const int lo = pick(0, 8);
    const int hi = pick(0, 8);
    const bool hi_is_var = pick(0, 1) == 1;
    env.scalars["n"] = hi;
    const std::string hi_text = hi_is_var ? "n" : std::to_string(hi);

    const char* ops[] = {"+", "-", "*", "/"};
    const std::string op = ops[pick(0, 3)];
    const bool multiplicative = op == "*" || op == "/";

    // exp3 and its direct evaluation
    struct Term {
      const char* text;
      std::function<Rational(int)> eval;
    };
    const std::vector<Term> additive = {
        {"a[i]", [&](int i) { return a[i]; }},
        {"i", [](int i) { return Rational(i); }},
        {"a[i] * k", [&](int i) { return a[i] * k; }},
        {"(a[i] - i)", [&](int i) { return a[i] - i; }},
        {"k", [&](int) { return Rational(k); }},
        {"a[i + 1] * i", [&](int i) { return a[i + 1] * i; }},
    };
    const std::vector<Term> nonzero = {
        {"b[i]", [&](int i) { return b[i]; }},
        {"(i + 1)", [](int i) { return Rational(i + 1); }},
        {"k", [&](int) { return Rational(k); }},
        {"b[i] * k", [&](int i) { return b[i] * k; }},
    };
    const auto& terms = multiplicative ? nonzero : additive;
    const Term& term = terms[static_cast<std::size_t>(pick(0, static_cast<int>(terms.size()) - 1))];

    // loop header: ascending < / <=, or descending > / >=
    const int shape = pick(0, 3);
    std::string header;
    std::vector<int> indices;
    const char* incs[] = {"i++", "++i", "i += 1", "i = i + 1"};
    const char* decs[] = {"i--", "--i", "i -= 1", "i = i - 1"};
    switch (shape) {
      case 0:
        header = "for (int i = " + std::to_string(lo) + "; i < " + hi_text + "; " + incs[pick(0, 3)] + ")";
        for (int i = lo; i < hi; ++i) indices.push_back(i);
        break;
      case 1:
        header = "for (int i = " + std::to_string(lo) + "; i <= " + hi_text + "; " + incs[pick(0, 3)] + ")";
        for (int i = lo; i <= hi; ++i) indices.push_back(i);
        break;
      case 2:
        header = "for (int i = " + hi_text + "; i > " + std::to_string(lo) + "; " + decs[pick(0, 3)] + ")";
        for (int i = hi; i > lo; --i) indices.push_back(i);
        break;
      default:
        header = "for (int i = " + hi_text + "; i >= " + std::to_string(lo) + "; " + decs[pick(0, 3)] + ")";
        for (int i = hi; i >= lo; --i) indices.push_back(i);
        break;
    }
    const bool compound = pick(0, 1) == 1;
    // `s = s / b[i] * k` is (s / b[i]) * k, so the divisor needs parentheses
    std::string rhs = term.text;
    if (op == "/" && rhs.find(' ') != std::string::npos && rhs.front() != '(') rhs = "(" + rhs + ")";
    const std::string stmt = compound ? "s " + op + "= " + term.text + ";" : "s = s " + op + " " + rhs + ";";
    const bool braces = pick(0, 1) == 1;
    const std::string java = "class G {\n  double f(double[] a, double[] b, int n, double k, double s) {\n    " +
                             header + (braces ? " {\n      " + stmt + "\n    }\n" : "\n      " + stmt + "\n") +
                             "    return s;\n  }\n}\n";
    shapes.insert(std::to_string(shape) + op);

    Rational expected = s0;
    for (int i : indices) {
      const Rational v = term.eval(i);
      if (op == "+") expected += v;
      if (op == "-") expected -= v;
      if (op == "*") expected *= v;
      if (op == "/") expected /= v;
    }

    ++total;
    std::string why;
    const SourceUnit u = make_unit("gen", "G.java", java);
    const auto ms = match_kind(PatternKind::FIS, u);
    if (ms.size() != 1) {
      why = "matched " + std::to_string(ms.size()) + " times";
    } else if (!check(ms[0]).accepted()) {
      why = "rejected: " + describe_failures(check(ms[0]));
    } else {
      const FormulaRecord rec = make_record(ms[0]);
      mathml_out.push_back(rec.mathml);
      try {
        fmtest::Evaluator ev(env);
        const Rational got = ev.statement(rec.text);
        if (got == expected) {
          ++agree;
        } else {
          why = rec.text + " gives " + got.str() + ", loop gives " + expected.str();
        }
      } catch (const std::exception& e) {
        why = rec.text + ": " + e.what();
      }
    }
    if (!why.empty() && failures.size() < 5) failures.push_back(header + " " + stmt + " -> " + why);
  }
  c.check(agree == total && total == 200,
          std::to_string(agree) + "/" + std::to_string(total) + " reconstructed formulas equal loop execution");
  c.info(std::to_string(shapes.size()) + " of 16 (direction, relation, operator) shapes drawn");
  for (const auto& f : failures) c.info(f);
  return c;
}

Criterion determinism() {
  Criterion c;
  for (bool vectors : {false, true}) {
    const ScanResult one = run_scan(fixture_config(1, vectors));
    const ScanResult eight = run_scan(fixture_config(8, vectors));
    const std::string tag = vectors ? " (vectors)" : "";
    c.check(csv_text(one) == csv_text(eight), "CSV 1 vs 8 workers byte-identical" + tag);
    c.check(summary_text(one) == summary_text(eight), "summary 1 vs 8 workers byte-identical" + tag);
  }
  return c;
}

Criterion comment_stripping() {
  Criterion c;
  const fs::path dir = fmtest::fixtures() / "comments";
  std::vector<fs::path> inputs;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".java") inputs.push_back(e.path());
  }
  std::sort(inputs.begin(), inputs.end());
  int ok = 0;
  for (const auto& p : inputs) {
    const std::string src = fmtest::slurp(p);
    const std::string want = fmtest::slurp(fs::path(p).replace_extension(".expected"));
    const std::string got = strip_comments(src);
    bool same_shape = got.size() == src.size();
    for (std::size_t i = 0; same_shape && i < src.size(); ++i) {
      // line breaks stay put; non-space output bytes are original bytes
      const bool nl = src[i] == '\n' || src[i] == '\r';
      if ((nl || got[i] != ' ') && got[i] != src[i]) same_shape = false;
    }
    const bool pass = got == want && same_shape && text::count_lines(got) == text::count_lines(src);
    if (pass) {
      ++ok;
    } else {
      c.check(false, p.filename().string() + " differs from its expected stripping");
    }
  }
  c.check(ok == 20 && inputs.size() == 20,
          std::to_string(ok) + "/" + std::to_string(inputs.size()) + " adversarial fixtures preserved");
  return c;
}

Criterion mathml_wellformed(std::vector<std::string> docs) {
  Criterion c;
  for (const CsvRow& r : run_scan(fixture_config(1, true)).rows) docs.push_back(r.mathml);
  const fs::path oracle = fmtest::fixtures() / "oracle";
  const EvalResult e = run_eval(oracle, oracle / "manifest.txt", std::nullopt);
  for (const PatternMatch& m : e.detected) docs.push_back(make_record(m).mathml);

  int ok = 0;
  for (const std::string& d : docs) {
    const fmtest::XmlCheck x = fmtest::check_xml(d);
    if (x.well_formed && x.root == "math") {
      ++ok;
    } else if (ok + 5 > static_cast<int>(docs.size())) {
      c.info(x.error + ": " + d.substr(0, 120));
    }
  }
  c.check(!docs.empty() && ok == static_cast<int>(docs.size()),
          std::to_string(ok) + "/" + std::to_string(docs.size()) + " MathML documents well-formed with root <math>");
  return c;
}

// One synthetic Java file of roughly 150 lines.
std::string synthetic_file(std::mt19937& rng, int index) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::ostringstream o;
  o << "package gen.p" << index % 97 << ";\n\n"
    << "import java.util.List;\n"
    << "import java.util.Map;\n\n"
    << "/**\n * Generated class " << index << ".\n * Has loops, strings and comments.\n */\n"
    << "public class C" << index << " {\n"
    << "  private static final String URL = \"http://example.org/\" + \"/* not a comment */\";\n"
    << "  private final double[] data = new double[" << pick(8, 64) << "];\n"
    << "  private int counter;\n\n";
  const int methods = 11;
  for (int m = 0; m < methods; ++m) {
    o << "  // method " << m << "\n"
      << "  public double m" << m << "(double[] a, double[][] g, List<Item> items, int n) {\n"
      << "    double s = 0;\n";
    switch (pick(0, 7)) {
      case 0:
        o << "    for (int i = 0; i < n; i++) {\n      s += a[i] * a[i];\n    }\n";
        break;
      case 1:
        o << "    for (Item it : items) {\n      s += it.weight;\n    }\n";
        break;
      case 2:
        o << "    for (int i = 0; i < g.length; i++) {\n      for (int j = 0; j < g[i].length; j++) {\n"
          << "        s += g[i][j];\n      }\n    }\n";
        break;
      case 3:
        o << "    for (int i = 0; i < n; i++) {\n      a[i] *= 0.5;\n    }\n";
        break;
      case 4:
        o << "    int i = 0;\n    while (i < n) {\n      s += a[i];\n      i++;\n    }\n";
        break;
      case 5:
        o << "    for (int i = 1; i < n; i++) {\n      s += a[i - 1];\n      n--;\n    }\n";
        break;
      case 6:
        o << "    /* block comment with for (int i = 0; i < n; i++) s += a[i]; inside */\n"
          << "    if (n > 0 && a.length > n) {\n      s = a[n - 1];\n    }\n";
        break;
      default:
        o << "    for (Map.Entry<String, Item> e : index.entrySet()) {\n      log(e.getKey() + \"//x\");\n    }\n";
        break;
    }
    o << "    counter++;\n"
      << "    String msg = \"m" << m << " done: \" + s;\n"
      << "    if (msg.isEmpty()) {\n      throw new IllegalStateException(msg);\n    }\n"
      << "    return s;\n  }\n\n";
  }
  o << "}\n";
  return o.str();
}

Criterion performance(bool quick) {
  Criterion c;
  const fs::path dir = fmtest::scratch("acceptance_perf");
  const int files = quick ? 500 : 10000;
  std::mt19937 rng(7);
  const auto g0 = Clock::now();
  for (int f = 0; f < files; ++f) {
    const fs::path p = dir / ("proj" + std::to_string(f % 40)) / "src" / ("C" + std::to_string(f) + ".java");
    fmtest::spit(p, synthetic_file(rng, f));
  }
  const double gen = seconds_since(g0);

  ScanConfig cfg;
  cfg.roots = {dir};
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  const auto t0 = Clock::now();
  const ScanResult r = run_scan(cfg);
  const double secs = seconds_since(t0);

  std::ostringstream s;
  s << std::fixed << std::setprecision(1) << r.totals.files << " files, " << r.totals.loc << " LOC, "
    << r.totals.matches << " matches scanned in " << secs << " s on " << cfg.workers
    << " worker(s) (limit 60 s; corpus written in " << gen << " s)";
  c.check(r.totals.files == static_cast<std::uint64_t>(files), std::to_string(files) + " files discovered");
  if (!quick) c.check(r.totals.loc >= 1400000 && r.totals.loc <= 1700000, "corpus is about 1.5 MLOC");
  c.check(secs < 60.0, s.str());
  fs::remove_all(dir);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"formula-miner acceptance criteria"};
  std::vector<int> known_red;
  bool quick = false;
  app.add_option("--known-red", known_red, "Criteria expected to fail (documented in the decisions ledger)");
  app.add_flag("--quick", quick, "Use a 500-file performance corpus");
  CLI11_PARSE(app, argc, argv);

  std::vector<std::string> mathml;
  struct Entry {
    int id;
    const char* title;
    std::function<Criterion()> run;
  };
  const std::vector<Entry> criteria = {
      {1, "metric reproduction", metric_reproduction},
      {2, "oracle arithmetic", oracle_arithmetic},
      {3, "fixture detection suite", fixture_suite},
      {4, "precedence", precedence},
      {5, "formula semantics oracle", [&] { return formula_semantics(mathml); }},
      {6, "determinism", determinism},
      {7, "comment stripping", comment_stripping},
      {8, "MathML well-formedness", [&] { return mathml_wellformed(mathml); }},
      {9, "performance sanity", [&] { return performance(quick); }},
  };

  std::set<int> red;
  for (const Entry& e : criteria) {
    Criterion c;
    try {
      c = e.run();
    } catch (const std::exception& ex) {
      c.check(false, std::string("exception: ") + ex.what());
    }
    std::cout << (c.ok() ? "PASS" : "FAIL") << "  " << e.id << ". " << e.title << '\n';
    for (const auto& l : c.lines()) std::cout << "        " << l << '\n';
    if (!c.ok()) red.insert(e.id);
  }

  const std::set<int> expected(known_red.begin(), known_red.end());
  std::cout << "\n" << (criteria.size() - red.size()) << "/" << criteria.size() << " criteria pass";
  if (!red.empty()) {
    std::cout << "; failing:";
    for (int id : red) std::cout << ' ' << id;
  }
  std::cout << '\n';
  if (red != expected) {
    std::cout << "failing set differs from --known-red\n";
    return 1;
  }
  return 0;
}
