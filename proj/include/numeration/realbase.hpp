#ifndef NUMERATION_REALBASE_HPP
#define NUMERATION_REALBASE_HPP

#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polynomial.hpp"
#include "words.hpp"

namespace numeration {

inline constexpr std::size_t kDefaultDepth = 64;
inline constexpr std::size_t kDefaultRefinementBudget = 256;

/// A real number given as the unique root of a squarefree rational
/// polynomial inside an isolating interval. Signs of polynomial expressions
/// in the root are decided exactly: a gcd with the defining polynomial
/// settles whether the value is zero, and bisection of the interval settles
/// the sign otherwise. Whenever a gcd exposes a proper factor vanishing at
/// the root, the defining polynomial shrinks to that factor.
class AlgebraicReal {
public:
  AlgebraicReal() = default;

  /// `lo < hi`, with exactly one root of `p` in (lo, hi].
  AlgebraicReal(const Polynomial& p, Rational lo, Rational hi) {
    if (p.degree() < 1) throw DomainError("defining polynomial must have degree >= 1");
    if (!(lo < hi)) throw DomainError("isolating interval must satisfy lo < hi");
    poly_ = p.squarefree();
    const int roots = count_roots(poly_, lo, hi);
    if (roots != 1)
      throw DomainError("interval (" + lo.str() + ", " + hi.str() + ") contains " + std::to_string(roots) +
                        " roots of " + p.to_string() + ", expected exactly 1");
    if (poly_.sign_at(hi) == 0) {
      set_exact(hi);
      return;
    }
    while (poly_.sign_at(lo) == 0) {
      Rational mid = (lo + hi) / 2;
      if (count_roots(poly_, mid, hi) == 1)
        lo = mid;
      else if (poly_.sign_at(mid) == 0) {
        set_exact(mid);
        return;
      } else
        hi = mid;
    }
    lo_ = std::move(lo);
    hi_ = std::move(hi);
    if (poly_.degree() == 1) set_exact(-poly_.coeff(0) / poly_.coeff(1));
  }

  static AlgebraicReal rational(const Rational& q) {
    AlgebraicReal a;
    a.set_exact(q);
    return a;
  }

  const Polynomial& polynomial() const { return poly_; }
  std::optional<Rational> exact_value() const { return exact_; }
  Interval enclosure() const { return {lo_, hi_}; }

  void refine_once() {
    if (exact_) return;
    Rational mid = (lo_ + hi_) / 2;
    int s = poly_.sign_at(mid);
    if (s == 0) {
      set_exact(mid);
      return;
    }
    if (s == poly_.sign_at(lo_))
      lo_ = std::move(mid);
    else
      hi_ = std::move(mid);
  }

  /// Shrinks the enclosure below `width`.
  Interval refine_to(const Rational& width) {
    while (hi_ - lo_ >= width) refine_once();
    return enclosure();
  }

  Interval enclose(const Polynomial& r) const {
    if (exact_) return Interval(r(*exact_));
    return r.enclose(enclosure());
  }

  Polynomial reduce(const Polynomial& r) const { return r % poly_; }

  bool is_zero_at_root(const Polynomial& r) {
    if (r.is_zero()) return true;
    if (exact_) return r(*exact_) == 0;
    Polynomial g = gcd(poly_, r);
    if (g.degree() < 1) return false;
    if (count_roots(g, lo_, hi_) >= 1) {
      poly_ = g.squarefree();
      if (poly_.degree() == 1) set_exact(-poly_.coeff(0) / poly_.coeff(1));
      return true;
    }
    poly_ = divmod(poly_, g).first.monic();
    return false;
  }

  /// Exact sign of r(root).
  int sign(const Polynomial& r, std::size_t budget = kDefaultRefinementBudget) {
    if (is_zero_at_root(r)) return 0;
    for (std::size_t step = 0;; ++step) {
      Interval e = enclose(r);
      if (e.lo > 0) return 1;
      if (e.hi < 0) return -1;
      if (step == budget)
        throw RefinementError("sign of " + r.to_string() + " at the root of " + poly_.to_string() +
                              " undecided after " + std::to_string(budget) + " bisections");
      refine_once();
    }
  }

  /// Exact floor of r(root).
  BigInt floor(const Polynomial& r, std::size_t budget = kDefaultRefinementBudget) {
    Interval e = enclose(r);
    for (std::size_t step = 0; e.width() >= 1; ++step) {
      if (step == budget)
        throw RefinementError("floor of " + r.to_string() + " undecided after " + std::to_string(budget) +
                              " bisections");
      refine_once();
      e = enclose(r);
    }
    BigInt k = floor_int(e.lo);
    // value lies in [k, k + 2)
    if (sign(r - Polynomial::constant(Rational(k + 1)), budget) >= 0) return k + 1;
    return k;
  }

private:
  void set_exact(const Rational& q) {
    exact_ = q;
    poly_ = Polynomial({-q, Rational(1)});
    lo_ = hi_ = q;
  }

  Polynomial poly_;
  Rational lo_, hi_;
  std::optional<Rational> exact_;
};

/// Resolution status of d_β(1).
struct ParryClass {
  enum class Kind { simple, non_simple, unresolved };
  Kind kind = Kind::unresolved;
  /// simple: n = |t_1...t_n|; non_simple: preperiod m, period n.
  std::size_t m = 0;
  std::size_t n = 0;
  /// Digits examined when unresolved.
  std::size_t depth = 0;

  bool resolved() const { return kind != Kind::unresolved; }
  bool simple() const { return kind == Kind::simple; }

  static ParryClass of(const EPWord& d) {
    ParryClass c;
    if (d.is_finite()) {
      c.kind = Kind::simple;
      c.n = d.preperiod().size();
    } else {
      c.kind = Kind::non_simple;
      c.m = d.preperiod().size();
      c.n = d.period().size();
    }
    return c;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::simple: return "simple Parry, n=" + std::to_string(n);
      case Kind::non_simple: return "non-simple Parry, m=" + std::to_string(m) + ", n=" + std::to_string(n);
      default: return "unresolved at depth " + std::to_string(depth);
    }
  }
};

/// A digit stream: always the first `prefix.size()` digits, plus the whole
/// eventually periodic word once periodicity has been proved.
struct Expansion {
  DigitWord prefix;
  std::optional<EPWord> word;
  ParryClass parry;

  bool resolved() const { return word.has_value(); }

  /// First n digits; requires n <= prefix.size() unless resolved.
  DigitWord digits(std::size_t n) const {
    if (word) return word->prefix(n);
    if (n > prefix.size())
      throw DomainError("expansion unresolved: only " + std::to_string(prefix.size()) + " digits known, " +
                        std::to_string(n) + " requested");
    return DigitWord(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(n));
  }

  std::string to_string() const {
    if (word) return numeration::to_string(*word) + " [" + parry.to_string() + "]";
    return numeration::to_string(prefix) + "... [" + parry.to_string() + "]";
  }
};

/// Exactly represented base β > 1.
///
/// The greedy digits of 1 are produced from exact remainders r_i in Q[β]
/// (polynomials in β reduced modulo the defining polynomial); a repeated
/// remainder proves ultimate periodicity, a zero remainder proves a finite
/// expansion. Digits are cached and the cache only grows.
class RealBase {
public:
  enum class Kind { integer, rational, algebraic, parry };

  static RealBase integer(const BigInt& b) {
    if (b < 2) throw DomainError("integer base must be >= 2, got " + b.str());
    RealBase r(Kind::integer, AlgebraicReal::rational(Rational(b)));
    r.spec_ = "int:" + b.str();
    return r;
  }

  static RealBase rational(const BigInt& p, const BigInt& q) {
    if (q <= 0) throw DomainError("rational base needs a positive denominator");
    Rational v(p, q);
    if (v <= 1) throw DomainError("base must exceed 1, got " + v.str());
    if (boost::multiprecision::denominator(v) == 1) return integer(boost::multiprecision::numerator(v));
    RealBase r(Kind::rational, AlgebraicReal::rational(v));
    r.spec_ = "rat:" + boost::multiprecision::numerator(v).str() + "/" + boost::multiprecision::denominator(v).str();
    return r;
  }

  /// Root of `p` in (lo, hi]; the root must exceed 1.
  static RealBase algebraic(const Polynomial& p, const Rational& lo, const Rational& hi) {
    AlgebraicReal a(p, lo, hi);
    Rational one(1);
    if (lo < one && count_roots(a.polynomial(), one, hi) != 1)
      throw DomainError("root of " + p.to_string() + " in the given interval is not > 1");
    RealBase r(Kind::algebraic, std::move(a));
    r.spec_ = "poly:" + format_coeffs(p) + "@(" + lo.str() + "," + hi.str() + ")";
    return r;
  }

  Kind kind() const { return kind_; }
  const std::string& spec() const { return spec_; }

  /// Word the base was defined from, for `parry:` bases.
  const std::optional<EPWord>& defining_word() const { return word_; }

  Polynomial polynomial() const {
    std::lock_guard lock(mu_);
    return value_.polynomial();
  }

  std::optional<Rational> exact_value() const {
    std::lock_guard lock(mu_);
    return value_.exact_value();
  }

  /// Enclosure of β of width below `width`.
  Interval enclosure(const Rational& width) const {
    std::lock_guard lock(mu_);
    return value_.refine_to(width);
  }

  int compare(const Rational& x) const {
    std::lock_guard lock(mu_);
    return value_.sign(Polynomial({-x, Rational(1)}), budget_);
  }

  void set_refinement_budget(std::size_t b) {
    std::lock_guard lock(mu_);
    budget_ = b;
  }

  /// Greedy β-expansion of 1, extended to `depth` digits or until resolved.
  Expansion d_beta_one(std::size_t depth = kDefaultDepth) const {
    if (depth == 0) throw DomainError("depth must be >= 1");
    std::lock_guard lock(mu_);
    extend(depth);
    Expansion e;
    if (resolved_) {
      e.word = resolved_;
      e.prefix = resolved_->prefix(std::max(depth, digits_.size()));
      e.parry = ParryClass::of(*resolved_);
    } else {
      e.prefix.assign(digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(depth));
      e.parry.depth = depth;
    }
    return e;
  }

  /// Quasi-greedy expansion d*_β(1): (t_1...t_{n-1}(t_n - 1))^ω when
  /// d_β(1) = t_1...t_n, otherwise d_β(1) itself.
  Expansion d_beta_star(std::size_t depth = kDefaultDepth) const {
    Expansion e = d_beta_one(depth);
    if (e.word && e.word->is_finite()) {
      DigitWord t = e.word->preperiod();
      t.back() -= 1;
      e.word = EPWord::periodic(std::move(t));
      e.prefix = e.word->prefix(e.prefix.size());
    }
    // Unresolved: if d_β(1) is finite beyond `depth`, the first `depth`
    // digits of both words still coincide.
    return e;
  }

  /// d_β(1) as a word; throws unless periodicity is proved within `depth`.
  EPWord greedy_word(std::size_t depth = kDefaultDepth) const {
    Expansion e = d_beta_one(depth);
    if (!e.word) throw DomainError("base " + spec_ + " is not resolved as a Parry number within depth " +
                                   std::to_string(depth));
    return *e.word;
  }

  EPWord quasi_greedy_word(std::size_t depth = kDefaultDepth) const {
    Expansion e = d_beta_star(depth);
    if (!e.word) throw DomainError("base " + spec_ + " is not resolved as a Parry number within depth " +
                                   std::to_string(depth));
    return *e.word;
  }

  RealBase(const RealBase& o) {
    std::lock_guard lock(o.mu_);
    copy_from(o);
  }
  RealBase& operator=(const RealBase& o) {
    if (this == &o) return *this;
    std::scoped_lock lock(mu_, o.mu_);
    copy_from(o);
    return *this;
  }

private:
  friend RealBase beta_from_expansion(const EPWord& d);

  RealBase(Kind k, AlgebraicReal v) : kind_(k), value_(std::move(v)) { remainders_.push_back(Polynomial::constant(1)); }

  static std::string format_coeffs(const Polynomial& p) {
    std::string out;
    auto ints = p.primitive_integral().integer_coeffs_high_first();
    for (std::size_t i = 0; i < ints.size(); ++i) out += (i ? "," : "") + ints[i].str();
    return out;
  }

  void copy_from(const RealBase& o) {
    kind_ = o.kind_;
    spec_ = o.spec_;
    word_ = o.word_;
    value_ = o.value_;
    budget_ = o.budget_;
    digits_ = o.digits_;
    remainders_ = o.remainders_;
    resolved_ = o.resolved_;
  }

  // Caller holds mu_.
  void extend(std::size_t depth) const {
    const Polynomial x = Polynomial::monomial(1);
    while (!resolved_ && digits_.size() < depth) {
      Polynomial v = value_.reduce(x * remainders_.back());
      BigInt eps = value_.floor(v, budget_);
      Polynomial r = v - Polynomial::constant(Rational(eps));
      digits_.push_back(static_cast<Digit>(eps));
      if (value_.is_zero_at_root(r)) {
        resolved_ = EPWord::finite(digits_);
        return;
      }
      // r_0 = 1 never recurs since every later remainder lies in [0, 1).
      const Interval er = value_.enclose(r);
      for (std::size_t j = 1; j < remainders_.size(); ++j) {
        if (!er.overlaps(value_.enclose(remainders_[j]))) continue;
        if (value_.is_zero_at_root(r - remainders_[j])) {
          const auto m = static_cast<std::ptrdiff_t>(j);
          resolved_ = EPWord(DigitWord(digits_.begin(), digits_.begin() + m),
                             DigitWord(digits_.begin() + m, digits_.end()));
          return;
        }
      }
      remainders_.push_back(value_.reduce(r));
    }
  }

  Kind kind_ = Kind::integer;
  std::string spec_;
  std::optional<EPWord> word_;
  mutable std::mutex mu_;
  mutable AlgebraicReal value_;
  std::size_t budget_ = kDefaultRefinementBudget;
  mutable DigitWord digits_;
  mutable std::vector<Polynomial> remainders_;
  mutable std::optional<EPWord> resolved_;
};

/// Defining polynomial of the base whose greedy expansion of 1 is `d`:
/// X^n - Σ t_j X^{n-j} for finite d = t_1...t_n, and
/// (X^{m+n} - Σ_{j<=m+n} d_j X^{m+n-j}) - (X^m - Σ_{j<=m} d_j X^{m-j})
/// for preperiod m and period n.
inline Polynomial parry_polynomial(const EPWord& d) {
  auto head = [&](std::size_t len) {
    Polynomial p = Polynomial::monomial(len);
    for (std::size_t j = 1; j <= len; ++j) p = p - Polynomial::monomial(len - j, Rational(d.at(j - 1)));
    return p;
  };
  if (d.is_finite()) return head(d.preperiod().size());
  const std::size_t m = d.preperiod().size(), n = d.period().size();
  return head(m + n) - head(m);
}

/// The unique β > 1 with d_β(1) = d.
inline RealBase beta_from_expansion(const EPWord& d) {
  if (!is_parry_valid(d, true))
    throw DomainError("word " + to_string(d) + " has a shift that is not lexicographically smaller than itself");
  if (d.at(0) < 1) throw DomainError("word " + to_string(d) + " must start with a nonzero digit");
  if (d == EPWord::finite({1})) throw DomainError("word 1(0) corresponds to base 1, which is excluded");
  const Digit d1 = d.at(0);
  if (d.is_finite() && d.preperiod().size() == 1) {
    RealBase r = RealBase::integer(BigInt(d1));
    r.kind_ = RealBase::Kind::parry;
    r.spec_ = "parry:" + to_string(d);
    r.word_ = d;
    return r;
  }
  // d_1 = floor(β) and β is not an integer here, so β lies in (d_1, d_1 + 1).
  RealBase r(RealBase::Kind::parry, AlgebraicReal(parry_polynomial(d), Rational(d1), Rational(d1 + 1)));
  r.spec_ = "parry:" + to_string(d);
  r.word_ = d;
  return r;
}

/// Suffix test: every suffix of w of length i is <= the
/// length-i prefix of the reference word.
inline bool suffixes_below_prefixes(std::span<const Digit> w, std::span<const Digit> ref_prefix) {
  const std::size_t n = w.size();
  for (std::size_t i = 1; i <= n; ++i)
    if (lex_cmp(w.subspan(n - i), ref_prefix.first(i)) > 0) return false;
  return true;
}

/// Membership of w in the factor language of S_β (canonical) or S'_β
/// (non-canonical).
inline bool shift_member(const RealBase& base, std::span<const Digit> w, Variant variant,
                         std::size_t depth = kDefaultDepth) {
  const std::size_t need = std::max<std::size_t>(w.size(), 1);
  const Expansion e = variant == Variant::canonical ? base.d_beta_star(std::max(depth, need))
                                                    : base.d_beta_one(std::max(depth, need));
  const DigitWord ref = e.digits(w.size());
  return suffixes_below_prefixes(w, ref);
}

/// "int:3", "rat:5/2", "poly:1,-1,-1@(1,2)", "parry:110(0)".
inline RealBase parse_base(std::string_view s) {
  auto bad = [&](const std::string& why) { return ParseError("bad base '" + std::string(s) + "': " + why); };
  auto to_int = [&](std::string_view t) {
    std::string str(t);
    if (str.empty()) throw bad("empty number");
    std::size_t i = (str[0] == '-' || str[0] == '+') ? 1 : 0;
    if (i == str.size() || !std::all_of(str.begin() + static_cast<std::ptrdiff_t>(i), str.end(),
                                        [](char c) { return c >= '0' && c <= '9'; }))
      throw bad("'" + str + "' is not an integer");
    return BigInt(str[0] == '+' ? str.substr(1) : str);
  };
  auto to_rat = [&](std::string_view t) {
    auto slash = t.find('/');
    if (slash == std::string_view::npos) return Rational(to_int(t));
    BigInt den = to_int(t.substr(slash + 1));
    if (den == 0) throw bad("zero denominator");
    return Rational(to_int(t.substr(0, slash)), den);
  };
  auto colon = s.find(':');
  if (colon == std::string_view::npos) throw bad("missing kind prefix");
  std::string_view kind = s.substr(0, colon), rest = s.substr(colon + 1);
  if (kind == "int") return RealBase::integer(to_int(rest));
  if (kind == "rat") {
    Rational q = to_rat(rest);
    return RealBase::rational(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
  }
  if (kind == "parry") return beta_from_expansion(parse_ep_word(rest));
  if (kind == "poly") {
    auto at = rest.find('@');
    if (at == std::string_view::npos) throw bad("missing '@(lo,hi)' isolating interval");
    std::string_view coeffs = rest.substr(0, at), iv = rest.substr(at + 1);
    if (iv.size() < 5 || iv.front() != '(' || iv.back() != ')') throw bad("interval must look like (lo,hi)");
    iv = iv.substr(1, iv.size() - 2);
    auto comma = iv.find(',');
    if (comma == std::string_view::npos) throw bad("interval must look like (lo,hi)");
    std::vector<BigInt> cs;
    std::size_t start = 0;
    while (true) {
      auto c = coeffs.find(',', start);
      cs.push_back(to_int(coeffs.substr(start, c == std::string_view::npos ? coeffs.npos : c - start)));
      if (c == std::string_view::npos) break;
      start = c + 1;
    }
    return RealBase::algebraic(Polynomial::from_high_first(cs), to_rat(iv.substr(0, comma)),
                               to_rat(iv.substr(comma + 1)));
  }
  throw bad("unknown kind '" + std::string(kind) + "'");
}

}  // namespace numeration

#endif  // NUMERATION_REALBASE_HPP
