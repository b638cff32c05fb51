// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>

#include "support.hpp"

using namespace numeration;
using namespace testsupport;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) notes << what;
      else notes << "; " << what;
      ok = false;
    }
  }
};

std::string word_text(const DigitWord& w) { return w.empty() ? "ε" : to_string(w); }

// Exhaustive comparison of membership against a regular expression.
void expect_language(Check& c, const NumSys& s, const std::regex& re, Digit amax, std::size_t max_len,
                     const std::string& name) {
  for (std::size_t len = 0; len <= max_len; ++len)
    for (const auto& w : all_words(amax, len)) {
      const bool want = std::regex_match(to_string(w), re);
      if (s.member(w) != want) {
        c.expect(false, name + " disagrees on " + word_text(w));
        return;
      }
    }
}

struct ParryCase {
  std::string name;
  RealBase base;
  bool simple;
};

std::vector<ParryCase> parry_cases() {
  return {{"2", RealBase::integer(2), true},
          {"3", RealBase::integer(3), true},
          {"phi", phi(), true},
          {"phi^2", phi2(), false},
          {"tribonacci", tribonacci(), true}};
}

void criterion1(Check& c) {
  c.expect(RealBase::integer(3).greedy_word() == E("30(0)"), "d_3(1)");
  c.expect(RealBase::integer(3).quasi_greedy_word() == E("(2)"), "d*_3(1)");
  c.expect(phi().greedy_word() == E("110(0)"), "d_phi(1)");
  c.expect(phi2().greedy_word() == E("21(1)"), "d_phi^2(1)");
  expect_language(c, fixture("base3_noncanonical"), std::regex("[012]*(30*)?"), 3, 8, "base-3 non-canonical");
  expect_language(c, fixture("ncphi"), std::regex("(0|10)*(1|110*)?"), 1, 8, "non-canonical phi");

  const auto p = check_bertrand(fixture("ex31_nonprolongable"), 4);
  c.expect(!p.holds() && p.first_violation->extended == W("20") &&
               p.first_violation->direction == BertrandDirection::prolongability,
           "20 prolongability violation");
  const auto q = check_bertrand(fixture("ex31_nonprefixclosed"), 4);
  bool found = false;
  for (const auto& v : q.violations)
    found |= v.word == W("5") && v.extended == W("50") && v.direction == BertrandDirection::prefix_closure;
  c.expect(found, "5/50 prefix-closure violation");
  c.expect(!member(fixture("ex31_nonprefixclosed"), W("5")) && member(fixture("ex31_nonprefixclosed"), W("50")),
           "5 not in N, 50 in N");
  c.expect(member(fixture("ex31_nonprolongable"), W("2")) && !member(fixture("ex31_nonprolongable"), W("20")),
           "2 in N, 20 not in N");
}

void criterion2(Check& c) {
  for (const auto& f : parry_cases())
    for (Variant v : {Variant::canonical, Variant::noncanonical}) {
      const std::string tag = f.name + "/" + to_string(v);
      const auto b = build_bertrand(f.base, v);
      const auto cl = classify_bertrand(b.system, 10);
      const bool case3 = v == Variant::noncanonical && f.simple;
      c.expect(cl.kind == (case3 ? Classification::Case::case3 : Classification::Case::case2), tag + " case");
      c.expect(cl.certified, tag + " certified");
      if (cl.base) {
        const Polynomial g = gcd(cl.base->polynomial(), f.base.polynomial());
        const Interval iv = cl.base->enclosure(pow10_inv(12));
        c.expect(g.degree() >= 1 && count_roots(g, iv.lo - pow10_inv(12), iv.hi) == 1, tag + " polynomial");
        c.expect(f.base.enclosure(pow10_inv(12)).overlaps(iv), tag + " root");
      } else {
        c.expect(false, tag + " no base recovered");
      }
      // ⌈β⌉ - 1 canonical, ⌊β⌋ non-canonical (coincide when β is not simple Parry)
      const Interval iv = f.base.enclosure(pow10_inv(6));
      const BigInt fl = floor_int(iv.lo);
      const bool integral = f.base.exact_value().has_value();
      const BigInt want = (v == Variant::noncanonical && f.simple) ? fl : (integral ? fl - 1 : fl);
      c.expect(BigInt(b.system.alphabet_max()) == want, tag + " alphabet");
      const auto u = b.system.values(31);
      for (std::size_t i = 0; i <= 30; ++i) {
        BigInt r = u[i];
        for (std::size_t j = 1; j <= i; ++j) r -= b.seed.at(j - 1) * u[i - j];
        if (r != 1) {
          c.expect(false, tag + " renewal residual at i=" + std::to_string(i));
          break;
        }
      }
    }
}

Dfa figure(int which) {
  Dfa d(1, 0);
  switch (which) {
    case 0:
      for (Digit x : {0, 1, 2}) d.add_edge(0, x, 0);
      break;
    case 1:
      d.add_state();
      for (Digit x : {0, 1, 2}) d.add_edge(0, x, 0);
      d.add_edge(0, 3, 1);
      d.add_edge(1, 0, 1);
      break;
    default:
      d.add_state();
      d.add_edge(0, 0, 0);
      d.add_edge(0, 1, 1);
      d.add_edge(1, 0, 0);
      if (which == 3) {
        d.add_state();
        d.add_edge(1, 1, 2);
        d.add_edge(2, 0, 2);
      }
  }
  d.set_all_final();
  return d;
}

void criterion3(Check& c) {
  const std::vector<std::tuple<std::string, RealBase, Variant, std::string, std::size_t>> cases{
      {"1a", RealBase::integer(3), Variant::canonical, "base3_canonical", 1},
      {"1b", RealBase::integer(3), Variant::noncanonical, "base3_noncanonical", 2},
      {"2a", phi(), Variant::canonical, "zeckendorf", 2},
      {"2b", phi(), Variant::noncanonical, "ncphi", 3}};
  int k = 0;
  for (const auto& [fig, base, v, sys, states] : cases) {
    const Dfa d = build_shift_dfa(base, v).dfa;
    c.expect(isomorphic(d, figure(k++)), "figure " + fig + " isomorphism");
    c.expect(d.num_states() == states, "figure " + fig + " state count");
    const NumSys s = fixture(sys);
    const auto eq = dfa_equiv_language(d, s, 8);
    c.expect(eq.agree, "figure " + fig + " language to length 8");
    for (std::size_t i = 0; i <= 25; ++i)
      if (count_accepted(d, i) != s.value(i)) {
        c.expect(false, "figure " + fig + " count at i=" + std::to_string(i));
        break;
      }
  }
}

void criterion4(Check& c) {
  const std::vector<std::tuple<std::string, EPWord, Variant, std::string>> cases{
      {"zeckendorf", E("(10)"), Variant::canonical, "X^2 - X - 1"},
      {"ncphi", E("110(0)"), Variant::noncanonical, "X^3 - 2X^2 + 1"},
      {"base3_noncanonical", E("30(0)"), Variant::noncanonical, "X^2 - 4X + 3"},
      {"phi2", E("21(1)"), Variant::canonical, "X^2 - 3X + 1"}};
  for (const auto& [sys, word, v, want] : cases) {
    const Polynomial p = char_poly(word, v);
    c.expect(p.to_string() == want, sys + " polynomial " + p.to_string());
    c.expect(!recurrence_mismatch(p, fixture(sys), 30), sys + " recurrence");
  }
}

void criterion5(Check& c) {
  for (const auto& f : parry_cases()) {
    if (!f.simple) continue;
    const auto r = counting_identity_check(f.base, 20);
    c.expect(!r.first_failure && r.checked == 21, f.name + " identity");
  }
}

void criterion6(Check& c) {
  constexpr std::size_t kIMax = 60;
  const Rational tol_root = pow10_inv(8), tol_width = pow10_inv(6);
  for (const auto& f : parry_cases())
    for (Variant v : {Variant::canonical, Variant::noncanonical}) {
      const std::string tag = f.name + "/" + to_string(v);
      const NumSys s = build_bertrand(f.base, v).system;
      const Interval beta = beta_interval(f.base);
      const Rational r = dominant_root_estimate(s, kIMax).estimate;
      c.expect(r - beta.lo < tol_root && beta.hi - r < tol_root, tag + " dominant root");
      const Interval target = renewal_limit_target(f.base, v);
      const Interval emp = renewal_limit_empirical(s, f.base, kIMax).back();
      c.expect(target.overlaps(emp), tag + " renewal overlap");
      c.expect(target.width() < tol_width && emp.width() < tol_width, tag + " renewal widths");
      if (f.simple) {
        // |log r - log β| <= |r - β| / min(r, β)
        const Rational ratio = entropy_estimate(s, kIMax).ratio;
        const Rational dist = std::max(ratio - beta.lo, beta.hi - ratio);
        c.expect(dist / std::min(ratio, beta.lo) < tol_width, tag + " entropy");
        const Dfa d = build_shift_dfa(f.base, v).dfa;
        c.expect(entropy_estimate(d, kIMax).ratio == ratio, tag + " automaton entropy");
      }
    }
  // closed-form targets
  for (int b : {2, 3}) c.expect(renewal_limit_target(RealBase::integer(b), Variant::canonical).contains(Rational(1)),
                                "integer canonical target 1");
  c.expect(renewal_limit_target(RealBase::integer(3), Variant::noncanonical).contains(Rational(3, 2)),
           "non-canonical 3 target 3/2");
  // Binet: F(i+2)/φ^i -> φ^2/√5
  const Float sqrt5 = sqrt(Float(5));
  const Float phi_f = (1 + sqrt5) / 2;
  const Float binet = phi_f * phi_f / sqrt5;
  const Interval tz = renewal_limit_target(phi(), Variant::canonical);
  c.expect(Float(tz.lo) <= binet && binet <= Float(tz.hi), "Zeckendorf target phi^2/sqrt5");
  c.expect(abs(binet - (3 * sqrt5 + 5) / 10) < Float("1e-90"), "phi^2/sqrt5 = (3 sqrt5 + 5)/10");
}

void criterion7(Check& c) {
  const auto r = hollander_probe(fixture("ex53"), phi(), 6, 40);
  for (std::size_t i = 4; i <= 40; ++i) {
    const std::size_t want = (i % 4 == 0 || i % 4 == 1) ? 0 : 1;
    if (r.rows[i - 1].k != std::optional<std::size_t>(want)) {
      c.expect(false, "example system k at i=" + std::to_string(i));
      break;
    }
  }
  c.expect(!r.stabilizes, "example system must not stabilize");
  const auto z = hollander_probe(fixture("zeckendorf"), phi(), 6, 40);
  c.expect(z.stabilizes && z.limit_is_d_star && z.limit_prefix == phi().quasi_greedy_word().prefix(6),
           "Zeckendorf limit d*_phi(1)");

  for (const char* name : {"base3_canonical", "base3_noncanonical", "zeckendorf", "ncphi", "phi2", "successor"}) {
    const NumSys s = fixture(name);
    const auto cl = classify_bertrand(s, 10);
    if (!cl.a) {
      c.expect(false, std::string(name) + " no word a");
      continue;
    }
    for (std::size_t i = 0; i <= 30; ++i)
      if (s.lex_max(i) != cl.a->prefix(i)) {
        c.expect(false, std::string(name) + " lex-max identity at i=" + std::to_string(i));
        break;
      }
  }
  // no single word a can work when consecutive lex-max words are not prefixes of each other
  for (const char* name : {"ex31_nonprolongable", "ex31_nonprefixclosed"}) {
    const NumSys s = fixture(name);
    bool fails = false;
    for (std::size_t i = 0; i < 30 && !fails; ++i) {
      const DigitWord a = s.lex_max(i), b = s.lex_max(i + 1);
      fails = !std::equal(a.begin(), a.end(), b.begin());
    }
    c.expect(fails, std::string(name) + " identity should fail");
  }
}

void criterion8(Check& c) {
  const Dfa d = build_shift_dfa(phi(), Variant::noncanonical).dfa;
  for (std::size_t k = 0; k <= 10; ++k) {
    DigitWord w{1, 1};
    w.insert(w.end(), k, 0);
    w.push_back(1);
    c.expect(!d.accepts(w), "accepted " + to_string(w));
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    std::function<void(Check&)> run;
    double budget_s;  // 0: no time limit
  };
  const std::vector<Criterion> all{
      {1, "worked examples", criterion1, 1.0},
      {2, "characterization round trip", criterion2, 5.0},
      {3, "automata golden tests", criterion3, 0},
      {4, "recurrence extraction", criterion4, 0},
      {5, "counting identity", criterion5, 0},
      {6, "asymptotics", criterion6, 10.0},
      {7, "convergence behavior", criterion7, 0},
      {8, "forbidden factors", criterion8, 0}};
  int failed = 0;
  for (const auto& cr : all) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.budget_s > 0 && secs >= cr.budget_s)
      c.expect(false, "took " + std::to_string(secs) + " s, limit " + std::to_string(cr.budget_s) + " s");
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << cr.id << " (" << cr.title << ", "
              << static_cast<int>(secs * 1000) << " ms)";
    if (!c.ok) std::cout << ": " << c.notes.str();
    std::cout << "\n";
    failed += c.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
