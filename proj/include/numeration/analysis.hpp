#ifndef NUMERATION_ANALYSIS_HPP
#define NUMERATION_ANALYSIS_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "automata.hpp"
#include "bertrand.hpp"
#include "numsys.hpp"
#include "realbase.hpp"

namespace numeration {

/// 10^-k as an exact rational.
inline Rational pow10_inv(unsigned k) {
  BigInt p = 1;
  for (unsigned i = 0; i < k; ++i) p *= 10;
  return Rational(BigInt(1), p);
}

inline const Rational kDefaultBetaWidth = pow10_inv(10);

/// Enclosure of β of width at most `width` (and above 1). Exact bases get
/// a symmetric interval of the same width, so every base is compared at the
/// same resolution.
inline Interval beta_interval(const RealBase& base, const Rational& width = kDefaultBetaWidth) {
  if (auto v = base.exact_value()) return {*v - width / 4, *v + width / 4};
  Interval b = base.enclosure(width);
  Rational w = width;
  while (b.lo <= 1) b = base.enclosure(w /= 2);
  return b;
}

struct RootEstimate {
  /// U(i+1)/U(i) for 0 <= i < i_max.
  std::vector<Rational> ratios;
  Rational estimate;
};

inline RootEstimate dominant_root_estimate(const NumSys& s, std::size_t i_max) {
  if (i_max < 2) throw DomainError("i_max must be >= 2");
  const auto u = s.values(i_max + 1);
  RootEstimate r;
  for (std::size_t i = 0; i < i_max; ++i) r.ratios.emplace_back(u[i + 1], u[i]);
  r.estimate = r.ratios.back();
  return r;
}

/// Σ_{i>=1} i a_i x^{-i} in closed form for an eventually periodic a,
/// at a rational point x > 1.
inline Rational weighted_digit_series(const EPWord& a, const Rational& x) {
  const std::size_t m = a.preperiod().size(), n = a.period().size();
  const Rational y = 1 / x;
  Rational yn = 1;
  for (std::size_t k = 0; k < n; ++k) yn *= y;
  const Rational geo = 1 / (1 - yn);                  // Σ_k y^{kn}
  const Rational geo_weighted = yn / ((1 - yn) * (1 - yn));  // Σ_k k y^{kn}
  Rational sum = 0, yi = 1;
  for (std::size_t i = 1; i <= m; ++i) {
    yi *= y;
    sum += Rational(static_cast<long>(i) * a.at(i - 1)) * yi;
  }
  for (std::size_t j = 1; j <= n; ++j) {
    yi *= y;  // y^{m+j}
    const Rational aj(a.at(m + j - 1));
    sum += aj * yi * (Rational(static_cast<long>(m + j)) * geo + Rational(static_cast<long>(n)) * geo_weighted);
  }
  return sum;
}

/// Rigorous enclosure of β / ((β - 1) Σ i a_i β^{-i}) with a = d*_β(1)
/// (canonical) or d_β(1), using that the series is decreasing in β.
inline Interval renewal_limit_target(const RealBase& base, Variant variant,
                                     const Rational& beta_width = kDefaultBetaWidth,
                                     std::size_t depth = kDefaultDepth) {
  const EPWord a = variant == Variant::canonical ? base.quasi_greedy_word(depth) : base.greedy_word(depth);
  const Interval b = beta_interval(base, beta_width);
  auto target = [&](const Rational& x_for_prefactor, const Rational& x_for_series) {
    return x_for_prefactor / (x_for_prefactor - 1) / weighted_digit_series(a, x_for_series);
  };
  // x/(x-1) decreases, the series decreases, so the bounds pair opposite ends
  return {target(b.hi, b.lo), target(b.lo, b.hi)};
}

/// Enclosures of U(i)/β^i for 0 <= i <= i_max.
inline std::vector<Interval> renewal_limit_empirical(const NumSys& s, const RealBase& base, std::size_t i_max,
                                                     const Rational& beta_width = kDefaultBetaWidth) {
  if (i_max < 1) throw DomainError("i_max must be >= 1");
  const Interval b = beta_interval(base, beta_width);
  const auto u = s.values(i_max + 1);
  std::vector<Interval> out;
  Rational plo = 1, phi = 1;
  for (std::size_t i = 0; i <= i_max; ++i) {
    out.emplace_back(Rational(u[i]) / phi, Rational(u[i]) / plo);
    plo *= b.lo;
    phi *= b.hi;
  }
  return out;
}

/// Both entropy estimators at i_max. The ratio estimator
/// log(c(i_max)/c(i_max-1)) converges geometrically for these counts, the
/// per-length one (1/i) log c(i) only like 1/i; both share the limit.
struct EntropyEstimate {
  BigInt count_last;  // c(i_max)
  BigInt count_prev;  // c(i_max - 1)
  Rational ratio;     // c(i_max)/c(i_max-1)
  double per_length = 0;
  double ratio_log = 0;
};

namespace detail {
inline double log_big(const BigInt& v) {
  // split off a power of two so huge counts stay inside double range
  const auto bits = boost::multiprecision::msb(v);
  const unsigned shift = bits > 60 ? static_cast<unsigned>(bits - 60) : 0;
  const BigInt top = v >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

inline EntropyEstimate entropy_from_counts(BigInt last, BigInt prev, std::size_t i_max) {
  EntropyEstimate e;
  e.count_last = std::move(last);
  e.count_prev = std::move(prev);
  if (e.count_prev == 0 || e.count_last == 0) throw DomainError("empty language: entropy undefined");
  e.ratio = Rational(e.count_last, e.count_prev);
  e.per_length = log_big(e.count_last) / static_cast<double>(i_max);
  e.ratio_log = log_big(e.count_last) - log_big(e.count_prev);
  return e;
}
}  // namespace detail

inline EntropyEstimate entropy_estimate(const Dfa& d, std::size_t i_max) {
  if (i_max < 2) throw DomainError("i_max must be >= 2");
  return detail::entropy_from_counts(count_accepted(d, i_max), count_accepted(d, i_max - 1), i_max);
}

/// Counts are |N_U ∩ A^i| = U(i).
inline EntropyEstimate entropy_estimate(const NumSys& s, std::size_t i_max) {
  if (i_max < 2) throw DomainError("i_max must be >= 2");
  return detail::entropy_from_counts(s.value(i_max), s.value(i_max - 1), i_max);
}

/// w_k 0^ω = (t_1...t_{n-1}(t_n - 1))^k t_1...t_n 0^ω, first `len` letters.
inline DigitWord hollander_word_prefix(const DigitWord& t, std::size_t k, std::size_t len) {
  DigitWord block = t;
  block.back() -= 1;
  DigitWord w;
  for (std::size_t r = 0; r < k && w.size() < len; ++r) w.insert(w.end(), block.begin(), block.end());
  w.insert(w.end(), t.begin(), t.end());
  w.resize(len, 0);
  return w;
}

struct HollanderRow {
  std::size_t i = 0;
  /// Pref_{min(ell,i)}(lex_max(i)) compared against w_k 0^ω (simple case)
  /// or d_β(1) (otherwise).
  DigitWord prefix;
  /// Simple case: smallest k with matching prefix.
  std::optional<std::size_t> k;
  /// Longest common prefix of lex_max(i) with d_β(1).
  std::size_t common_prefix = 0;
  bool matches_limit_candidate = false;
};

struct HollanderReport {
  bool simple_parry = false;
  std::size_t ell = 0;
  std::size_t i_max = 0;
  std::vector<HollanderRow> rows;  // i = 1..i_max
  /// Over [ell, i_max] only: the terminal run of equal values covers at
  /// least half of that range.
  bool stabilizes = false;
  std::optional<std::size_t> stable_from;
  std::optional<DigitWord> limit_prefix;
  bool limit_is_d_star = false;
  bool limit_is_d = false;
};

/// Tracks Pref_ell(rep(U(i)-1)) against the words w_k 0^ω (β simple
/// Parry) or d_β(1) (otherwise).
inline HollanderReport hollander_probe(const NumSys& s, const RealBase& base, std::size_t ell, std::size_t i_max,
                                       std::size_t depth = kDefaultDepth) {
  if (ell < 1) throw DomainError("ell must be >= 1");
  if (ell > i_max) throw DomainError("ell must not exceed i_max");
  const EPWord d = base.greedy_word(depth);
  const EPWord dstar = base.quasi_greedy_word(depth);
  HollanderReport r;
  r.simple_parry = d.is_finite();
  r.ell = ell;
  r.i_max = i_max;
  const DigitWord t = d.is_finite() ? d.preperiod() : DigitWord{};
  const std::size_t kmax = r.simple_parry ? ell / t.size() + 1 : 0;
  for (std::size_t i = 1; i <= i_max; ++i) {
    HollanderRow row;
    row.i = i;
    const DigitWord lm = s.lex_max(i);
    const std::size_t len = std::min(ell, i);
    row.prefix.assign(lm.begin(), lm.begin() + static_cast<std::ptrdiff_t>(len));
    while (row.common_prefix < i && lm[row.common_prefix] == d.at(row.common_prefix)) ++row.common_prefix;
    if (r.simple_parry) {
      for (std::size_t k = 0; k <= kmax; ++k)
        if (hollander_word_prefix(t, k, len) == row.prefix) {
          row.k = k;
          break;
        }
      row.matches_limit_candidate = row.k.has_value();
    } else {
      row.matches_limit_candidate = row.common_prefix >= len;
    }
    r.rows.push_back(std::move(row));
  }
  auto key = [&](const HollanderRow& row) -> std::optional<std::size_t> {
    if (r.simple_parry) return row.k;
    return row.matches_limit_candidate ? std::optional<std::size_t>(0) : std::nullopt;
  };
  const auto last = key(r.rows.back());
  if (last) {
    std::size_t from = i_max;
    while (from > ell && key(r.rows[from - 2]) == last) --from;
    r.stable_from = from;
    const std::size_t span = i_max - ell + 1;
    r.stabilizes = 2 * (i_max - from + 1) >= span && i_max > from;
    if (r.stabilizes) {
      r.limit_prefix = r.simple_parry ? hollander_word_prefix(t, *last, ell) : d.prefix(ell);
      r.limit_is_d_star = *r.limit_prefix == dstar.prefix(ell);
      r.limit_is_d = *r.limit_prefix == d.prefix(ell);
    }
  }
  return r;
}

}  // namespace numeration

#endif  // NUMERATION_ANALYSIS_HPP
