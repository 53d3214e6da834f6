// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

#include <random>
#include <sstream>

#include "doctest.h"
#include "fminer/constraints.hpp"
#include "fminer/corpus.hpp"
#include "fminer/pipeline.hpp"
#include "fminer/text.hpp"
#include "support/paths.hpp"

using namespace fminer;
namespace fs = std::filesystem;

namespace {

SymbolSet S(std::initializer_list<const char*> xs) {
  SymbolSet s;
  for (const char* x : xs) s.insert(x);
  return s;
}

PatternMatch only(PatternKind k, const std::string& src) {
  const auto ms = match_kind(k, make_unit("p", "T.java", src));
  REQUIRE(ms.size() == 1);
  return ms[0];
}

std::vector<std::string> failed(const ConstraintReport& r) { return r.failed_ids(); }

}  // namespace

TEST_SUITE("constraints") {

TEST_CASE("vars examples") {
  CHECK(vars("a[i] * f(b, c.d)") == S({"a", "i", "b", "c"}));
  CHECK(vars("0").empty());
  CHECK(vars("pixel & 0xff") == S({"pixel"}));
  CHECK(vars("this.w * x.getY() + \"n\" + 'c'") == S({"w", "x"}));
  CHECK(vars("1e-5 * rate + 0x1FL - 2.5f") == S({"rate"}));
  CHECK(vars("new double[n]") == S({"n"}));
  CHECK(vars("new Foo(x)") == S({"x"}));
  CHECK(vars("flag ? null : true").count("null") == 0);
}

TEST_CASE("writes examples") {
  CHECK(writes("pixel = pixel >> 8;") == S({"pixel"}));
  CHECK(writes("").empty());
  CHECK(writes("x += 1; a[i]--; y.z = 0;") == S({"x", "a", "y"}));
  CHECK(writes("++k; m <<= 2; q >>>= 1; int t = 3;") == S({"k", "m", "q", "t"}));
  CHECK(writes("if (a == b && c != d && e <= f) g(h);").empty());
  CHECK(writes("s = \"x = y\";") == S({"s"}));
  CHECK(writes("this.count++;") == S({"count"}));
}

TEST_CASE("base identifiers") {
  CHECK(base_identifier("a[i].b") == "a");
  CHECK(base_identifier("this.x[k]") == "x");
  CHECK(base_identifier("lum[x][y]") == "lum");
}

TEST_CASE("property: vars and writes distribute over unions") {
  const std::vector<std::string> exprs = {"a[i] * b", "f(c) + d.e", "x ? y : z", "0"};
  const std::vector<std::string> blocks = {"x = 1;", "a[i]++;", "", "y.z += w;", "q = r = s;"};
  std::mt19937 rng(7);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::string> pick_e, pick_b;
    for (const auto& e : exprs) if (rng() % 2) pick_e.push_back(e);
    for (const auto& b : blocks) if (rng() % 2) pick_b.push_back(b);
    SymbolSet ue, ub;
    for (const auto& e : pick_e) { auto v = vars(e); ue.insert(v.begin(), v.end()); }
    for (const auto& b : pick_b) { auto w = writes(b); ub.insert(w.begin(), w.end()); }
    CHECK(vars(pick_e) == ue);
    CHECK(writes(pick_b) == ub);
  }
}

TEST_CASE("property: every written identifier occurs in the block") {
  for (const char* b : {"x = 1;", "a[i]++;", "y.z += w;", "q = r = s;", "--m;", "int t = 0, u = 1;"}) {
    for (const auto& w : writes(b)) CHECK(std::string(b).find(w) != std::string::npos);
  }
}

TEST_CASE("FIS constraint examples") {
  const auto ok = check(only(PatternKind::FIS, "for (int i = 0; i < n; i++) s += a[i];"));
  CHECK(ok.accepted());
  CHECK(ok.verdicts.size() == 5);

  const auto bound = check(only(PatternKind::FIS, "for (int i = 0; i < n; i++) { s += a[i]; n--; }"));
  CHECK(failed(bound) == std::vector<std::string>{"C5"});
  CHECK(bound.find("C5")->offending == S({"n"}));
  CHECK(bound.find("C2")->pass);

  const auto self = check(only(PatternKind::FIS, "for (int i = 0; i < n; i++) s += s * a[i];"));
  CHECK(failed(self) == std::vector<std::string>{"C1"});

  const auto idx = check(only(PatternKind::FIS, "for (int i = 0; i < i * n; i++) s += a[i];"));
  CHECK(failed(idx) == std::vector<std::string>{"C2"});

  const auto side = check(only(PatternKind::FIS, "for (int i = 0; i < n; i++) s += a[k++];"));
  CHECK(failed(side) == std::vector<std::string>{"C5"});
}

TEST_CASE("array length bound is exempt for array accumulators") {
  const auto r = check(only(PatternKind::FIA, "for (int i = 0; i < a.length; i++) a[i] *= 2;"));
  CHECK(r.accepted());
}

TEST_CASE("luminance innermost loop fails C5 on pixel") {
  const std::string src = fmtest::slurp(fmtest::fixtures() / "corpus/samples/Luminance.java");
  const auto fis = match_kind(PatternKind::FIS, make_unit("samples", "Luminance.java", src));
  REQUIRE(fis.size() == 1);
  const auto r = check(fis[0]);
  CHECK(failed(r) == std::vector<std::string>{"C5"});
  CHECK(r.find("C5")->offending == S({"pixel"}));
}

TEST_CASE("mutation: index and accumulator writes are caught") {
  const char* accepted[] = {
      "for (int i = 0; i < n; i++) { s += a[i]; }",
      "for (int i = 0; i < n; i++) { log(i); s *= b[i]; }",
      "for (int i = 1; i <= n; i++) p = p * i;",
  };
  for (const char* src : accepted) {
    CAPTURE(src);
    const PatternMatch m = only(PatternKind::FIS, src);
    REQUIRE(check(m).accepted());

    PatternMatch bumped = m;
    bumped.roles.blocks[1] += (bumped.roles.blocks[1].empty() ? "" : " ") + std::string("i++;");
    CHECK(check(bumped).find("C4")->pass == false);

    PatternMatch reset = m;
    reset.roles.blocks[1] += " " + m.roles.accu + " = 0;";
    CHECK(check(reset).find("C3")->pass == false);
  }
  const PatternMatch fe = only(PatternKind::FES, "for (double v : xs) total += v;");
  REQUIRE(check(fe).accepted());
  PatternMatch fe_reset = fe;
  fe_reset.roles.blocks[1] = "total = 0;";
  CHECK(check(fe_reset).find("C3")->pass == false);
  PatternMatch fe_bump = fe;
  fe_bump.roles.blocks[1] = "v++;";
  CHECK(check(fe_bump).find("C4")->pass == false);
}

TEST_CASE("nested foreach examples") {
  const auto ok = check(only(PatternKind::NFECS, "for (A e : es) for (T t : e.ts) e.sum += t.v;"));
  CHECK(ok.accepted());

  const auto e1 = check(only(PatternKind::NFECS, "for (A e : es) { for (T t : e.ts) e.sum += t.v; e = null; }"));
  CHECK(failed(e1) == std::vector<std::string>{"E1"});
  CHECK(e1.find("E1")->offending == S({"e"}));

  const auto e4 = check(only(PatternKind::NFESS, "for (R r : rs) for (int v : r.vs) { c += v; rs2 = r.vs; r = q; }"));
  CHECK_FALSE(e4.accepted());

  const auto e4b = check(only(PatternKind::NFESS, "for (R r : rs) for (int v : r.cells) { c += v; r = null; }"));
  CHECK(e4b.find("E4")->pass == false);
}

TEST_CASE("nested for examples") {
  CHECK(check(only(PatternKind::NFISS, "for (int i = 0; i < n; i++) for (int j = 0; j < m; j++) t += a[i][j];"))
            .accepted());
  const auto cross = check(only(PatternKind::NFISS,
                                "for (int i = 0; i < n; i++) { m = i; for (int j = 0; j < m; j++) t += a[i][j]; }"));
  CHECK(failed(cross) == std::vector<std::string>{"N6"});
  const auto inner_idx = check(only(PatternKind::NFISS,
                                    "for (int i = 0; i < n; i++) for (int j = 0; j < m; j++) { t += a[i][j]; i++; }"));
  CHECK(inner_idx.find("N4")->pass == false);
}

TEST_CASE("vector examples") {
  auto vec = [](PatternKind k, const std::string& src) {
    const auto ms = match_kind(k, make_unit("p", "V.java", src));
    REQUIRE(ms.size() == 1);
    return check(ms[0]);
  };
  CHECK(vec(PatternKind::VEC_DOT, "d = a.x*b.x + a.y*b.y;").accepted());
  CHECK(vec(PatternKind::VEC_DOT, "d = a.x*b.y + a.y*b.x;").find("V2")->pass == false);
  CHECK(vec(PatternKind::VEC_ADD, "r.x = a.x + b.x; r.y = a.y + b.y;").accepted());
  CHECK(vec(PatternKind::VEC_ADD, "r[0] = p[0] + q[0]; r[1] = p[1] + q[1];").accepted());
  const auto odd = vec(PatternKind::VEC_DOT, "d = a.u*b.x + a.v*b.y;");
  CHECK(odd.find("V1")->pass == false);
  CHECK(odd.find("V1")->note == "unrecognized component access");
}

TEST_CASE("source and index") {
  CHECK(source("v.getX()") == "v");
  CHECK(index("v.getX()") == 0);
  CHECK(source("pos[1]") == "pos");
  CHECK(index("pos[1]") == 1);
  CHECK(source("sx") == "s");
  CHECK(index("sx") == 0);
  CHECK(index("p1") == 1);
  CHECK(index("w.get(1)") == 1);
  CHECK(source("e[k]") == "e");
  CHECK_FALSE(index("e[k]"));
  CHECK_FALSE(source("foo()"));
}

TEST_CASE("every constraint id appears exactly once per report") {
  const std::string src = fmtest::slurp(fmtest::fixtures() / "corpus/samples/Luminance.java");
  for (PatternKind k : kAllKinds) {
    for (const auto& m : match_kind(k, make_unit("l", "L.java", src))) {
      const auto r = check(m);
      std::vector<std::string> ids;
      for (const auto& v : r.verdicts) ids.push_back(v.id);
      std::vector<std::string> expected;
      for (auto id : constraint_ids(k)) expected.emplace_back(id);
      CHECK(ids == expected);
    }
  }
}

TEST_CASE("fixture verdicts") {
  const std::string table = fmtest::slurp(fmtest::fixtures() / "verdicts.txt");
  std::istringstream in(table);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string where, kind_name;
    ls >> where >> kind_name;
    std::string verdict;
    std::getline(ls, verdict);
    verdict = std::string(text::trim(verdict));
    const auto colon = where.rfind(':');
    const std::string file = where.substr(0, colon);
    const int start = std::stoi(where.substr(colon + 1));
    const auto kind = parse_kind(kind_name);
    REQUIRE(kind);
    CAPTURE(line);
    const std::string src = fmtest::slurp(fmtest::fixtures() / "corpus" / file);
    const auto ms = match_kind(*kind, make_unit("fixture", file, src));
    const PatternMatch* found = nullptr;
    for (const auto& m : ms) {
      if (m.start_line == start) found = &m;
    }
    REQUIRE(found != nullptr);
    const auto report = check(*found);
    CHECK((report.accepted() ? std::string("accept") : describe_failures(report)) == verdict);
    ++rows;
  }
  CHECK(rows >= 38);
}

TEST_CASE("property: accepted single loops never read what the body writes") {
  for (const auto& f : discover(fmtest::fixtures() / "corpus")) {
    const SourceUnit u = load_unit(f, "fixture", f.filename().string());
    for (const auto& m : match_all(u, default_kinds())) {
      if (m.roles.levels.size() != 1 || !is_sp(m.kind) || !check(m).accepted()) continue;
      std::vector<std::string> rhs = {m.roles.exp3};
      const auto& l = m.roles.levels[0];
      rhs.push_back(l.foreach ? l.collection : l.limit);
      SymbolSet written = writes(m.roles.blocks);
      const auto r = vars(rhs);
      for (const auto& w : written) CHECK_MESSAGE(r.count(w) == 0, m.id());
    }
  }
}

}
