#ifndef NUMERATION_WORDS_HPP
#define NUMERATION_WORDS_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "common.hpp"

namespace numeration {

/// Finite word over {0, 1, ...}; the empty word is allowed.
using DigitWord = std::vector<Digit>;

inline Digit max_digit(std::span<const Digit> w) {
  return w.empty() ? 0 : *std::max_element(w.begin(), w.end());
}

/// Lexicographic order on two finite words of the same length.
inline std::strong_ordering lex_cmp(std::span<const Digit> u, std::span<const Digit> v) {
  if (u.size() != v.size())
    throw DomainError("lex_cmp: finite words of different lengths (" + std::to_string(u.size()) +
                      " vs " + std::to_string(v.size()) + ")");
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != v[i]) return u[i] <=> v[i];
  return std::strong_ordering::equal;
}

/// Eventually periodic infinite word u v^ω, kept in canonical form: the
/// period is primitive and the preperiod cannot be shortened by rotating
/// the period. Canonical form makes structural equality coincide with
/// equality of the infinite words.
class EPWord {
public:
  EPWord() : period_{0} {}

  EPWord(DigitWord preperiod, DigitWord period)
      : preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) throw DomainError("EPWord: empty period");
    canonicalize();
  }

  /// t_1...t_n 0^ω
  static EPWord finite(DigitWord w) { return EPWord(std::move(w), DigitWord{0}); }

  static EPWord periodic(DigitWord period) { return EPWord({}, std::move(period)); }

  const DigitWord& preperiod() const { return preperiod_; }
  const DigitWord& period() const { return period_; }

  /// Digit at 0-based position i.
  Digit at(std::size_t i) const {
    if (i < preperiod_.size()) return preperiod_[i];
    return period_[(i - preperiod_.size()) % period_.size()];
  }

  Digit operator[](std::size_t i) const { return at(i); }

  DigitWord prefix(std::size_t n) const {
    DigitWord out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = at(i);
    return out;
  }

  /// Ends in 0^ω. The nonzero part is then preperiod().
  bool is_finite() const { return period_.size() == 1 && period_[0] == 0; }

  bool is_purely_periodic() const { return preperiod_.empty(); }

  Digit max_digit() const {
    return std::max(numeration::max_digit(preperiod_), numeration::max_digit(period_));
  }

  /// σ^i
  EPWord shift(std::size_t i) const {
    if (i <= preperiod_.size())
      return EPWord(DigitWord(preperiod_.begin() + static_cast<std::ptrdiff_t>(i), preperiod_.end()),
                    period_);
    std::size_t r = (i - preperiod_.size()) % period_.size();
    DigitWord rotated(period_.begin() + static_cast<std::ptrdiff_t>(r), period_.end());
    rotated.insert(rotated.end(), period_.begin(), period_.begin() + static_cast<std::ptrdiff_t>(r));
    return EPWord({}, std::move(rotated));
  }

  bool operator==(const EPWord&) const = default;

private:
  void canonicalize() {
    const std::size_t n = period_.size();
    for (std::size_t p = 1; p < n; ++p) {
      if (n % p != 0) continue;
      bool ok = true;
      for (std::size_t i = p; i < n && ok; ++i) ok = period_[i] == period_[i - p];
      if (ok) {
        period_.resize(p);
        break;
      }
    }
    while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
      std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
      preperiod_.pop_back();
    }
  }

  DigitWord preperiod_;
  DigitWord period_;
};

inline EPWord shift(const EPWord& w, std::size_t i) { return w.shift(i); }

/// Lexicographic order on infinite words; exact because both words are
/// periodic past max(preperiods) with joint period lcm(periods).
inline std::strong_ordering lex_cmp(const EPWord& u, const EPWord& v) {
  const std::size_t horizon = std::max(u.preperiod().size(), v.preperiod().size()) +
                              std::lcm(u.period().size(), v.period().size());
  for (std::size_t i = 0; i < horizon; ++i)
    if (u.at(i) != v.at(i)) return u.at(i) <=> v.at(i);
  return std::strong_ordering::equal;
}

/// Mixed comparison: the finite word is read as w 0^ω.
inline std::strong_ordering lex_cmp(std::span<const Digit> u, const EPWord& v) {
  return lex_cmp(EPWord::finite(DigitWord(u.begin(), u.end())), v);
}

inline std::strong_ordering lex_cmp(const EPWord& u, std::span<const Digit> v) {
  return lex_cmp(u, EPWord::finite(DigitWord(v.begin(), v.end())));
}

/// σ^i(d) < d (strict) or σ^i(d) <= d for every i >= 1.
///
/// Shifts are examined for i up to |pre| + 2|period|, each compared on the
/// first |pre| + 2|period| letters; past that both the shift index and the
/// compared letters cycle with the period.
inline bool is_parry_valid(const EPWord& d, bool strict) {
  const std::size_t horizon = d.preperiod().size() + 2 * d.period().size();
  const DigitWord ref = d.prefix(horizon);
  for (std::size_t i = 1; i <= horizon; ++i) {
    auto c = lex_cmp(d.shift(i).prefix(horizon), ref);
    if (c > 0) return false;
    if (strict && c == 0) return false;
  }
  return true;
}

/// Turns a word a with σ^i(a) <= a into a word d with σ^i(d) < d:
/// a purely periodic a = (a_1...a_n)^ω becomes a_1...a_{n-1}(a_n+1)0^ω,
/// anything else is returned unchanged.
inline EPWord d_from_a(const EPWord& a) {
  if (!is_parry_valid(a, false))
    throw DomainError("d_from_a: input has a shift lexicographically greater than itself");
  if (!a.is_purely_periodic()) return a;
  DigitWord d = a.period();
  d.back() += 1;
  return EPWord::finite(std::move(d));
}

// ---------------------------------------------------------------------------
// Text syntax: "110(0)" for compact digits, "[10,0,1]([2])" once a digit
// exceeds 9. A word without parentheses is finite (implicit 0^ω tail).

namespace detail {

inline DigitWord parse_digit_block(std::string_view s, std::string_view whole) {
  DigitWord out;
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw ParseError("unterminated '[' in word '" + std::string(whole) + "'");
    s = s.substr(1, s.size() - 2);
    if (s.empty()) return out;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = s.find(',', start);
      std::string_view tok = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError("bad digit '" + std::string(tok) + "' in word '" + std::string(whole) + "'");
      unsigned long v = std::stoul(std::string(tok));
      out.push_back(static_cast<Digit>(v));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  }
  for (char c : s) {
    if (c < '0' || c > '9')
      throw ParseError("bad character '" + std::string(1, c) + "' in word '" + std::string(whole) + "'");
    out.push_back(static_cast<Digit>(c - '0'));
  }
  return out;
}

inline std::string format_digit_block(std::span<const Digit> w, bool compact) {
  std::string out;
  if (compact) {
    for (Digit d : w) out.push_back(static_cast<char>('0' + d));
    return out;
  }
  out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(w[i]);
  }
  return out + "]";
}

}  // namespace detail

inline DigitWord parse_digit_word(std::string_view s) {
  if (s.find('(') != std::string_view::npos)
    throw ParseError("expected a finite word, got '" + std::string(s) + "'");
  return detail::parse_digit_block(s, s);
}

inline std::string to_string(std::span<const Digit> w) {
  return detail::format_digit_block(w, max_digit(w) <= 9);
}

inline EPWord parse_ep_word(std::string_view s) {
  const auto open = s.find('(');
  if (open == std::string_view::npos) return EPWord::finite(detail::parse_digit_block(s, s));
  if (s.back() != ')' || s.find('(', open + 1) != std::string_view::npos)
    throw ParseError("malformed eventually periodic word '" + std::string(s) + "'");
  DigitWord pre = detail::parse_digit_block(s.substr(0, open), s);
  DigitWord per = detail::parse_digit_block(s.substr(open + 1, s.size() - open - 2), s);
  if (per.empty()) throw ParseError("empty period in '" + std::string(s) + "'");
  return EPWord(std::move(pre), std::move(per));
}

/// A finite word t 0^ω is written t0(0), matching the usual t0^ω notation.
inline std::string to_string(const EPWord& w) {
  const bool compact = w.max_digit() <= 9;
  DigitWord pre = w.preperiod();
  if (w.is_finite() && !pre.empty()) pre.push_back(0);
  return detail::format_digit_block(pre, compact) + "(" + detail::format_digit_block(w.period(), compact) + ")";
}

}  // namespace numeration

#endif  // NUMERATION_WORDS_HPP
