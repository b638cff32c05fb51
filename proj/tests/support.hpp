// Shared fixtures and brute-force oracles for the test suites. The oracles
// deliberately avoid the library's algorithms: sequences are iterated by
// hand, greedy representations are found by repeated subtraction, and real
// expansions use 100-digit floating point.

#ifndef NUMERATION_TESTS_SUPPORT_HPP
#define NUMERATION_TESTS_SUPPORT_HPP

#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "numeration/io.hpp"
#include "numeration/numeration.hpp"

namespace testsupport {

using namespace numeration;
using Float = boost::multiprecision::cpp_dec_float_100;

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURES_DIR) + "/" + name + ".json"; }

inline NumSys fixture(const std::string& name) { return parse_system(fixture_path(name)); }

inline DigitWord W(const std::string& s) { return parse_digit_word(s); }
inline EPWord E(const std::string& s) { return parse_ep_word(s); }

inline RealBase phi() { return parse_base("poly:1,-1,-1@(1,2)"); }
inline RealBase phi2() { return parse_base("poly:1,-3,1@(2,3)"); }
inline RealBase tribonacci() { return parse_base("poly:1,-1,-1,-1@(1,2)"); }

/// U(i) = Σ coeffs[j] U(i-1-j) + addend after the given initial terms.
inline std::vector<BigInt> iterate(std::vector<BigInt> u, const std::vector<int>& coeffs, int addend,
                                   std::size_t count) {
  while (u.size() < count) {
    BigInt next = addend;
    for (std::size_t j = 0; j < coeffs.size(); ++j) next += coeffs[j] * u[u.size() - 1 - j];
    u.push_back(next);
  }
  u.resize(count);
  return u;
}

/// U(0) = 1, U(i) = a_1 U(i-1) + ... + a_i U(0) + 1.
inline std::vector<BigInt> bertrand_values(const EPWord& a, std::size_t count) {
  std::vector<BigInt> u;
  for (std::size_t i = 0; i < count; ++i) {
    BigInt v = 1;
    for (std::size_t j = 1; j <= i; ++j) v += a.at(j - 1) * u[i - j];
    u.push_back(v);
  }
  return u;
}

/// Greedy representation by repeated subtraction, no padding.
inline DigitWord greedy(const std::vector<BigInt>& u, BigInt n) {
  if (n == 0) return {};
  std::size_t top = 0;
  while (top + 1 < u.size() && u[top + 1] <= n) ++top;
  DigitWord w;
  for (std::size_t k = top + 1; k-- > 0;) {
    Digit c = 0;
    while (n >= u[k]) {
      n -= u[k];
      ++c;
    }
    w.push_back(c);
  }
  return w;
}

/// All length-len words of 0*rep_U(N), by enumerating n < U(len).
inline std::set<DigitWord> language(const std::vector<BigInt>& u, std::size_t len) {
  std::set<DigitWord> out;
  for (BigInt n = 0; n < u.at(len); ++n) {
    DigitWord w = greedy(u, n);
    w.insert(w.begin(), len - w.size(), 0);
    out.insert(w);
  }
  return out;
}

/// Every word of length len over {0..amax}.
inline std::vector<DigitWord> all_words(Digit amax, std::size_t len) {
  std::vector<DigitWord> out{DigitWord{}};
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<DigitWord> next;
    for (const auto& w : out)
      for (Digit c = 0; c <= amax; ++c) {
        DigitWord v = w;
        v.push_back(c);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

/// Greedy digits of 1 in base beta using 100-digit floating point. Values
/// within 10^-80 of an integer are snapped to it, so finite expansions end
/// in zeros instead of drifting into the quasi-greedy tail.
inline DigitWord float_greedy_one(const Float& beta, std::size_t depth) {
  const Float tol("1e-80");
  DigitWord out;
  Float r = 1;
  for (std::size_t i = 0; i < depth; ++i) {
    Float v = beta * r;
    Float e = floor(v + tol);
    out.push_back(e.convert_to<Digit>());
    r = v - e;
    if (r < tol) r = 0;
  }
  return out;
}

/// Largest real root of a polynomial (high-first integer coeffs) in (lo, hi)
/// by floating bisection.
inline Float float_root(const std::vector<int>& coeffs, Float lo, Float hi) {
  auto f = [&](const Float& x) {
    Float v = 0;
    for (int c : coeffs) v = v * x + c;
    return v;
  };
  const bool lo_neg = f(lo) < 0;
  for (int it = 0; it < 400; ++it) {
    Float mid = (lo + hi) / 2;
    if ((f(mid) < 0) == lo_neg)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

/// σ^i(d) <= d (or <) checked on prefixes of length `depth` for all
/// i <= depth.
inline bool prefix_parry_valid(const EPWord& d, bool strict, std::size_t depth) {
  const DigitWord ref = d.prefix(depth);
  for (std::size_t i = 1; i <= depth; ++i) {
    const DigitWord s = shift(d, i).prefix(depth);
    if (s > ref) return false;
    if (strict && s == ref) return false;
  }
  return true;
}

}  // namespace testsupport

#endif  // NUMERATION_TESTS_SUPPORT_HPP
