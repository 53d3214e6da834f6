// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The formula-miner Authors

#include "fminer/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "fminer/text.hpp"

namespace fminer {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Fraction reduce(i128 num, i128 den) {
  if (den == 0) throw MetricsError("fraction with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr i128 kMax = INT64_MAX;
  if (num > kMax || num < -kMax || den > kMax) throw MetricsError("fraction overflow");
  return Fraction(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw MetricsError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

// Rounds num/den half up to an integer (num >= 0, den > 0).
i128 round_half_up(i128 num, i128 den) { return (2 * num + den) / (2 * den); }

i128 pow10(int e) {
  i128 p = 1;
  while (e-- > 0) p *= 10;
  return p;
}

// Percentage digits: the value rounded to `decimals` places of a percent.
struct Shown {
  i128 scaled;
  int decimals;
};

Shown shown(Fraction f) {
  const i128 num = static_cast<i128>(f.num()) * 100;
  const i128 den = f.den();
  if (f.num() == 0) return {0, 0};
  const bool negative = num < 0;
  const i128 a = negative ? -num : num;
  // a/den in percent; from 0.1% two decimals
  if (a * 10 >= den) {
    i128 k = round_half_up(a * 100, den);
    return {negative ? -k : k, 2};
  }
  int d = 3;
  while (a * pow10(d) < 10 * den && d < 30) ++d;
  i128 k = round_half_up(a * pow10(d), den);
  if (k >= 100) {
    k = (k + 5) / 10;
    --d;
  }
  return {negative ? -k : k, d};
}

}  // namespace

Fraction::Fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw MetricsError("fraction with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Fraction Fraction::parse(std::string_view s) {
  s = text::trim(s);
  bool percent = false;
  if (!s.empty() && s.back() == '%') {
    percent = true;
    s = text::trim(s.substr(0, s.size() - 1));
  }
  if (s.empty()) throw MetricsError("empty number");
  Fraction out;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    out = reduce(parse_int(text::trim(s.substr(0, slash))), parse_int(text::trim(s.substr(slash + 1))));
  } else {
    bool negative = false;
    std::string_view body = s;
    if (body.front() == '-' || body.front() == '+') {
      negative = body.front() == '-';
      body.remove_prefix(1);
    }
    const auto dot = body.find('.');
    const std::string_view whole = body.substr(0, dot);
    const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || frac.size() > 17) throw MetricsError("not a number: '" + std::string(s) + "'");
    for (char c : whole) {
      if (c < '0' || c > '9') throw MetricsError("not a number: '" + std::string(s) + "'");
    }
    for (char c : frac) {
      if (c < '0' || c > '9') throw MetricsError("not a number: '" + std::string(s) + "'");
    }
    const i128 scale = pow10(static_cast<int>(frac.size()));
    i128 num = (whole.empty() ? 0 : parse_int(whole)) * scale + (frac.empty() ? 0 : parse_int(frac));
    out = reduce(negative ? -num : num, scale);
  }
  return percent ? out / Fraction(100) : out;
}

Fraction operator+(const Fraction& a, const Fraction& b) {
  return reduce(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                static_cast<i128>(a.den_) * b.den_);
}

Fraction operator-(const Fraction& a, const Fraction& b) {
  return reduce(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                static_cast<i128>(a.den_) * b.den_);
}

Fraction operator*(const Fraction& a, const Fraction& b) {
  return reduce(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Fraction operator/(const Fraction& a, const Fraction& b) {
  if (b.num_ == 0) throw MetricsError("division by zero");
  return reduce(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
  const i128 l = static_cast<i128>(a.num_) * b.den_;
  const i128 r = static_cast<i128>(b.num_) * a.den_;
  return l < r ? std::strong_ordering::less : l > r ? std::strong_ordering::greater : std::strong_ordering::equal;
}

Fraction density(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw MetricsError("undefined density: denominator is zero");
  return reduce(static_cast<i128>(num), static_cast<i128>(den));
}

Fraction estimate(Fraction rho, Fraction recall) {
  if (recall <= Fraction(0) || recall > Fraction(1)) {
    throw MetricsError("recall must lie in (0, 1]");
  }
  return rho / recall;
}

std::string format_percent(Fraction f) {
  const Shown s = shown(f);
  if (s.scaled == 0) return "0%";
  const bool negative = s.scaled < 0;
  const i128 a = negative ? -s.scaled : s.scaled;
  const i128 p = pow10(s.decimals);
  std::string digits = std::to_string(static_cast<long long>(a % p));
  digits.insert(0, static_cast<std::size_t>(s.decimals) - digits.size(), '0');
  return (negative ? "-" : "") + std::to_string(static_cast<long long>(a / p)) + "." + digits + "%";
}

Fraction displayed_value(Fraction f) {
  const Shown s = shown(f);
  return reduce(s.scaled, pow10(s.decimals) * 100);
}

std::uint64_t covered_lines(std::span<const PatternMatch> matches) {
  std::vector<std::pair<int, int>> spans;
  spans.reserve(matches.size());
  for (const auto& m : matches) spans.emplace_back(m.start_line, m.end_line);
  std::sort(spans.begin(), spans.end());
  std::uint64_t total = 0;
  int cur_start = 0;
  int cur_end = -1;
  for (const auto& [s, e] : spans) {
    if (s > cur_end) {
      if (cur_end >= cur_start) total += static_cast<std::uint64_t>(cur_end - cur_start + 1);
      cur_start = s;
      cur_end = e;
    } else {
      cur_end = std::max(cur_end, e);
    }
  }
  if (cur_end >= cur_start) total += static_cast<std::uint64_t>(cur_end - cur_start + 1);
  return total;
}

ScanTotals aggregate(std::span<const FileResult> files, std::span<const std::string> projects) {
  ScanTotals t;
  std::set<std::string> all(projects.begin(), projects.end());
  std::set<std::string> nonempty;
  std::set<std::string> with_fc;
  for (const FileResult& f : files) {
    all.insert(f.project);
    ++t.files;
    t.loc += f.loc;
    if (f.loc > 0) nonempty.insert(f.project);
    t.loops_simple += f.loops_simple;
    t.loops_nested += f.loops_nested;

    std::vector<PatternMatch> sp;
    std::map<PatternKind, std::vector<PatternMatch>> by_kind;
    for (const PatternMatch& m : f.accepted) {
      if (!is_sp(m.kind)) continue;
      sp.push_back(m);
      by_kind[m.kind].push_back(m);
      if (!is_experimental(m.kind)) {
        if (is_nested(m.kind)) {
          ++t.sp_nested;
        } else {
          ++t.sp_simple;
        }
      }
    }
    if (sp.empty()) continue;
    ++t.fc_files;
    with_fc.insert(f.project);
    t.matches += sp.size();
    t.lofc += covered_lines(sp);
    for (const auto& [kind, ms] : by_kind) {
      PatternTotals& pt = t.per_pattern[kind];
      pt.matches += ms.size();
      pt.lofc += covered_lines(ms);
    }
  }
  t.projects = all.size();
  t.nonempty_projects = nonempty.size();
  t.fc_projects = with_fc.size();
  return t;
}

DensityReport densities(const ScanTotals& totals, Fraction recall) {
  DensityReport r;
  r.recall = recall;
  if (totals.files > 0) {
    r.rho_files = density(totals.fc_files, totals.files);
    r.rho_files_est = estimate(*r.rho_files, recall);
  }
  if (totals.loc > 0) {
    r.rho_loc = density(totals.lofc, totals.loc);
    r.rho_loc_est = estimate(*r.rho_loc, recall);
  }
  return r;
}

LoopFractions loop_fractions(const ScanTotals& totals, Fraction recall) {
  LoopFractions r;
  if (totals.loops_simple > 0) {
    r.simple = density(totals.sp_simple, totals.loops_simple);
    r.simple_est = estimate(*r.simple, recall);
  }
  if (totals.loops_nested > 0) {
    r.nested = density(totals.sp_nested, totals.loops_nested);
    r.nested_est = estimate(*r.nested, recall);
  }
  return r;
}

}  // namespace fminer
