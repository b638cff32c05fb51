#ifndef NUMERATION_BERTRAND_HPP
#define NUMERATION_BERTRAND_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "numsys.hpp"
#include "realbase.hpp"

namespace numeration {

struct BertrandBuild {
  NumSys system;
  /// The word a of U(i) = Σ a_j U(i-j) + 1.
  EPWord seed;
  /// Non-canonical requested for a base that is not simple Parry: the
  /// two shifts coincide and the canonical system is returned.
  bool variants_coincide = false;
};

/// Bertrand system of β: seeded by d*_β(1) (canonical) or d_β(1).
inline BertrandBuild build_bertrand(const RealBase& base, Variant variant, std::size_t depth = kDefaultDepth) {
  const EPWord d = base.greedy_word(depth);
  const bool simple = d.is_finite();
  EPWord seed = (variant == Variant::canonical) ? base.quasi_greedy_word(depth) : d;
  return {NumSys::bertrand(seed), seed, variant == Variant::noncanonical && !simple};
}

/// Characteristic polynomial of the linear recurrence of a Bertrand system.
///
/// canonical, d* = d_1...d_m (d_{m+1}...d_{m+n})^ω:
///   (X^{m+n} - Σ_{j<=m+n} d_j X^{m+n-j}) - (X^m - Σ_{j<=m} d_j X^{m-j});
/// canonical given a finite d_β(1) = t_1...t_n: X^n - Σ t_j X^{n-j};
/// noncanonical, d_β(1) = t_1...t_n:
///   (X^{n+1} - Σ t_j X^{n+1-j}) - (X^n - Σ t_j X^{n-j}).
inline Polynomial char_poly(const EPWord& d, Variant variant) {
  auto head = [&](std::size_t len, std::size_t shift) {
    Polynomial p = Polynomial::monomial(len + shift);
    for (std::size_t j = 1; j <= len; ++j) p = p - Polynomial::monomial(len + shift - j, Rational(d.at(j - 1)));
    return p;
  };
  if (variant == Variant::noncanonical) {
    if (!d.is_finite() || d.preperiod().empty())
      throw DomainError("noncanonical char_poly needs a finite d_β(1) = t_1...t_n with t_n >= 1, got " +
                        to_string(d));
    const std::size_t n = d.preperiod().size();
    return head(n, 1) - head(n, 0);
  }
  if (d.is_finite()) {
    if (d.preperiod().empty()) throw DomainError("char_poly of the zero word");
    return head(d.preperiod().size(), 0);
  }
  const std::size_t m = d.preperiod().size(), n = d.period().size();
  return head(m + n, 0) - head(m, 0);
}

/// Reads a recurrence off a characteristic polynomial X^D - Σ c_j X^{D-j}
/// and checks it against U(i) for D <= i <= up_to. Returns the first
/// failing index.
inline std::optional<std::size_t> recurrence_mismatch(const Polynomial& p, const NumSys& s, std::size_t up_to) {
  if (p.leading() != 1) throw DomainError("characteristic polynomial must be monic");
  const auto deg = static_cast<std::size_t>(p.degree());
  const auto u = s.values(up_to + 1);
  for (std::size_t i = deg; i <= up_to; ++i) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= deg; ++j) acc -= p.coeff(deg - j) * Rational(u[i - j]);
    if (acc != Rational(u[i])) return i;
  }
  return std::nullopt;
}

/// True when both sequences provably coincide for every index: the
/// difference satisfies the product recurrence, so agreement on enough
/// leading terms propagates. nullopt when either system lacks a recurrence.
inline std::optional<bool> systems_identical(const NumSys& x, const NumSys& y) {
  auto rx = x.linear_recurrence(), ry = y.linear_recurrence();
  if (!rx || !ry) return std::nullopt;
  const auto dx = static_cast<std::size_t>(rx->char_poly.degree());
  const auto dy = static_cast<std::size_t>(ry->char_poly.degree());
  const std::size_t start =
      std::max({std::size_t{0}, rx->valid_from > dx ? rx->valid_from - dx : 0, ry->valid_from > dy ? ry->valid_from - dy : 0});
  const std::size_t terms = start + dx + dy;
  for (std::size_t i = 0; i < terms; ++i)
    if (x.value(i) != y.value(i)) return false;
  return true;
}

/// Outcome of classifying a numeration system against the three cases of
/// the characterization.
struct Classification {
  enum class Case { case1, case2, case3, not_bertrand, inconclusive };
  Case kind = Case::inconclusive;
  std::size_t probe_len = 0;
  /// Prefix of a read off the lex-max chain.
  DigitWord extracted_prefix;
  /// Eventually periodic word a guessed from the prefix.
  std::optional<EPWord> a;
  /// d built from a; the greedy expansion of 1 in `base`.
  std::optional<EPWord> d;
  std::optional<RealBase> base;
  /// The system provably equals the Bertrand system seeded by a.
  bool certified = false;
  /// β is not simple Parry, so S_β = S'_β and cases 2 and 3 coincide
  /// (reported as case 2).
  bool shifts_coincide = false;
  std::optional<BertrandViolation> witness;

  std::string case_name() const {
    switch (kind) {
      case Case::case1: return "Case1";
      case Case::case2: return "Case2";
      case Case::case3: return "Case3";
      case Case::not_bertrand: return "NotBertrand";
      default: return "Inconclusive";
    }
  }
};

namespace detail {

/// Candidate (preperiod, period) decompositions of a finite prefix, shortest
/// description first; each period must be seen at least twice.
inline std::vector<EPWord> periodic_candidates(const DigitWord& p) {
  std::vector<std::pair<std::size_t, std::size_t>> mn;
  const std::size_t len = p.size();
  for (std::size_t n = 1; 2 * n <= len; ++n)
    for (std::size_t m = 0; m + 2 * n <= len; ++m) {
      bool ok = true;
      for (std::size_t i = m; i + n < len && ok; ++i) ok = p[i] == p[i + n];
      if (ok) mn.emplace_back(m, n);
    }
  std::stable_sort(mn.begin(), mn.end(), [](auto a, auto b) { return a.first + a.second < b.first + b.second; });
  std::vector<EPWord> out;
  for (auto [m, n] : mn) {
    EPWord w(DigitWord(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(m)),
             DigitWord(p.begin() + static_cast<std::ptrdiff_t>(m), p.begin() + static_cast<std::ptrdiff_t>(m + n)));
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
  }
  return out;
}

}  // namespace detail

/// Classifies s as Case 1 (U(i) = i+1), Case 2 (N_U = Fac(S_β)), Case 3
/// (N_U = Fac(S'_β)) or not Bertrand.
///
/// The Bertrand condition is checked up to `probe_len`; the word a is read
/// from rep(U(i)-1) = Pref_i(a). If a guessed eventually periodic a
/// reproduces the whole sequence (proved by recurrence agreement) and its
/// base round-trips exactly, the verdict is certified; otherwise it only
/// holds up to probe_len.
inline Classification classify_bertrand(const NumSys& s, std::size_t probe_len) {
  if (probe_len < 2) throw DomainError("probe_len must be >= 2");
  // words of length probe_len + 1 are compared against U(probe_len + 1)
  if (auto limit = s.size_limit(); limit && *limit < probe_len + 2) {
    if (*limit < 4)
      throw DomainError("classification needs at least 4 terms, the system has " + std::to_string(*limit));
    probe_len = *limit - 2;
  }
  Classification c;
  c.probe_len = probe_len;
  const BertrandReport report = check_bertrand(s, probe_len);
  if (!report.holds()) {
    c.kind = Classification::Case::not_bertrand;
    c.witness = report.first_violation;
    return c;
  }
  const DigitWord top = s.lex_max(probe_len);
  for (std::size_t i = 1; i < probe_len; ++i) {
    const DigitWord li = s.lex_max(i);
    if (!std::equal(li.begin(), li.end(), top.begin())) {
      // Bertrand systems have a prefix chain; report the broken link.
      c.kind = Classification::Case::not_bertrand;
      c.witness = BertrandViolation{li, top, BertrandDirection::prolongability};
      return c;
    }
  }
  c.extracted_prefix = top;

  struct Attempt {
    EPWord a, d;
    RealBase base;
    bool certified;
  };
  std::optional<Attempt> best;
  for (const EPWord& a : detail::periodic_candidates(top)) {
    if (!is_parry_valid(a, false) || a.at(0) < 1) continue;
    const EPWord d = (a == EPWord::finite({1})) ? a : d_from_a(a);
    if (a == EPWord::finite({1})) {
      // Case 1: a = 10^ω, U(i) = i + 1. No base.
      auto same = systems_identical(s, NumSys::bertrand(a));
      if (!same || *same) {
        c.kind = Classification::Case::case1;
        c.a = a;
        c.certified = same.value_or(false);
        return c;
      }
      continue;
    }
    RealBase base = beta_from_expansion(d);
    bool certified = false;
    auto same = systems_identical(s, NumSys::bertrand(a));
    if (same && *same) {
      const Expansion back = base.d_beta_one(kDefaultDepth);
      certified = back.word && *back.word == d;
    } else if (same && !*same) {
      continue;
    }
    Attempt att{a, d, base, certified};
    if (certified) {
      best = std::move(att);
      break;
    }
    if (!best) best = std::move(att);
  }
  if (!best) {
    c.kind = Classification::Case::inconclusive;
    return c;
  }
  c.a = best->a;
  c.d = best->d;
  c.base = best->base;
  c.certified = best->certified;
  if (best->a.is_purely_periodic())
    c.kind = Classification::Case::case2;  // a = d*_β(1), β simple Parry
  else if (best->a.is_finite())
    c.kind = Classification::Case::case3;  // a = d_β(1) finite
  else {
    c.kind = Classification::Case::case2;
    c.shifts_coincide = true;
  }
  return c;
}

struct CountingIdentityReport {
  std::size_t n = 0;  // |d_β(1)|
  std::size_t checked = 0;
  std::optional<std::size_t> first_failure;
};

/// U'(i+n) = U(i+n) + U'(i) for 0 <= i <= range_max, where U and U' are the
/// canonical and non-canonical systems of a simple Parry β.
inline CountingIdentityReport counting_identity_check(const RealBase& base, std::size_t range_max,
                                                      std::size_t depth = kDefaultDepth) {
  const EPWord d = base.greedy_word(depth);
  if (!d.is_finite())
    throw DomainError("counting identity needs a simple Parry base; d_β(1) = " + to_string(d) + " is infinite");
  const NumSys u = build_bertrand(base, Variant::canonical, depth).system;
  const NumSys up = build_bertrand(base, Variant::noncanonical, depth).system;
  CountingIdentityReport r;
  r.n = d.preperiod().size();
  for (std::size_t i = 0; i <= range_max; ++i) {
    ++r.checked;
    if (up.value(i + r.n) != u.value(i + r.n) + up.value(i)) {
      r.first_failure = i;
      break;
    }
  }
  return r;
}

}  // namespace numeration

#endif  // NUMERATION_BERTRAND_HPP
