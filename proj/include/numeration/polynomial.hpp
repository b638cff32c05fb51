#ifndef NUMERATION_POLYNOMIAL_HPP
#define NUMERATION_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace numeration {

/// Closed interval [lo, hi] with rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}
  explicit Interval(const Rational& x) : lo(x), hi(x) {}

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  bool positive() const { return lo > 0; }
  bool negative() const { return hi < 0; }

  friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
  friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
  friend Interval operator*(const Interval& a, const Interval& b) {
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo <= 0 && b.hi >= 0) throw DomainError("interval division by an interval containing 0");
    return a * Interval(1 / b.hi, 1 / b.lo);
  }
};

inline long double to_long_double(const Rational& q) { return q.convert_to<long double>(); }

/// Univariate polynomial with rational coefficients, lowest degree first.
/// The zero polynomial has no coefficients.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  /// Integer coefficients listed highest degree first, e.g. {1,-1,-1} = X^2-X-1.
  static Polynomial from_high_first(const std::vector<BigInt>& coeffs) {
    std::vector<Rational> c(coeffs.rbegin(), coeffs.rend());
    return Polynomial(std::move(c));
  }

  static Polynomial monomial(std::size_t degree, const Rational& coeff = 1) {
    std::vector<Rational> c(degree + 1);
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }

  static Polynomial constant(const Rational& v) { return Polynomial({v}); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  bool is_integral() const {
    return std::all_of(c_.begin(), c_.end(),
                       [](const Rational& q) { return boost::multiprecision::denominator(q) == 1; });
  }

  /// Coefficients highest degree first (integral polynomials only).
  std::vector<BigInt> integer_coeffs_high_first() const {
    if (!is_integral()) throw DomainError("polynomial has non-integer coefficients");
    std::vector<BigInt> out;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out.push_back(boost::multiprecision::numerator(*it));
    return out;
  }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Interval enclosure by Horner evaluation.
  Interval enclose(const Interval& x) const {
    Interval acc(Rational(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Interval(*it);
    return acc;
  }

  int sign_at(const Rational& x) const {
    Rational v = (*this)(x);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    Polynomial p = *this;
    Rational lc = p.leading();
    for (auto& x : p.c_) x /= lc;
    return p;
  }

  /// Scaled to integer coefficients with positive leading coefficient and content 1.
  Polynomial primitive_integral() const {
    if (is_zero()) return {};
    BigInt l = 1;
    for (const auto& q : c_) {
      BigInt d = boost::multiprecision::denominator(q);
      l = l / boost::multiprecision::gcd(l, d) * d;
    }
    std::vector<Rational> out;
    BigInt g = 0;
    for (const auto& q : c_) {
      Rational v = q * l;
      out.push_back(v);
      g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(v));
    }
    if (leading() < 0) g = -g;
    for (auto& v : out) v /= g;
    return Polynomial(std::move(out));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Rational& k, const Polynomial& a) { return constant(k) * a; }

  /// Euclidean division; returns (quotient, remainder).
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rational> r = a.c_;
    const int db = b.degree();
    if (a.degree() < db) return {Polynomial(), a};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
    for (int k = a.degree(); k >= db; --k) {
      Rational f = r[static_cast<std::size_t>(k)] / b.leading();
      q[static_cast<std::size_t>(k - db)] = f;
      if (f == 0) continue;
      for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b.c_[static_cast<std::size_t>(j)];
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

  friend Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      Polynomial r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Largest squarefree divisor, monic.
  Polynomial squarefree() const {
    Polynomial g = gcd(*this, derivative());
    if (g.degree() <= 0) return monic();
    return divmod(*this, g).first.monic();
  }

  bool operator==(const Polynomial&) const = default;

  /// "X^2 - X - 1"
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      Rational a = c_[static_cast<std::size_t>(k)];
      if (a == 0) continue;
      bool neg = a < 0;
      Rational mag = neg ? Rational(-a) : a;
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      std::string m = boost::multiprecision::denominator(mag) == 1 ? boost::multiprecision::numerator(mag).str()
                                                                    : mag.str();
      if (k == 0)
        out += m;
      else {
        if (mag != 1) out += m;
        out += k == 1 ? "X" : "X^" + std::to_string(k);
      }
    }
    return out;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Sturm chain of a squarefree polynomial.
inline std::vector<Polynomial> sturm_chain(const Polynomial& p) {
  std::vector<Polynomial> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    Polynomial r = chain[chain.size() - 2] % chain.back();
    if (r.is_zero()) break;
    chain.push_back(Polynomial::constant(-1) * r);
  }
  return chain;
}

namespace detail {
inline int sign_variations(const std::vector<Polynomial>& chain, const Rational& x) {
  int prev = 0, count = 0;
  for (const auto& q : chain) {
    int s = q.sign_at(x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}
}  // namespace detail

/// Number of distinct real roots in the half-open interval (a, b].
inline int count_roots(const Polynomial& p, const Rational& a, const Rational& b) {
  if (p.degree() <= 0) return 0;
  auto chain = sturm_chain(p.squarefree());
  return detail::sign_variations(chain, a) - detail::sign_variations(chain, b);
}

}  // namespace numeration

#endif  // NUMERATION_POLYNOMIAL_HPP
