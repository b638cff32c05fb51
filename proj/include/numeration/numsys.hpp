#ifndef NUMERATION_NUMSYS_HPP
#define NUMERATION_NUMSYS_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polynomial.hpp"
#include "words.hpp"

namespace numeration {

/// Number of terms materialized when a system is created; quotient bounds
/// and monotonicity are validated on this range up front and on every later
/// extension.
inline constexpr std::size_t kValidationRange = 64;

/// U(i) = Σ_{j=1}^{k} coeffs[j-1] U(i-j) + addend, for i >= |initial|.
struct Recurrence {
  std::vector<BigInt> coeffs;
  BigInt addend = 0;
};

/// Characteristic polynomial X^D - Σ c_j X^{D-j}, with U(i) = Σ c_j U(i-j)
/// holding for every i >= valid_from.
struct LinearRecurrence {
  Polynomial char_poly;
  std::size_t valid_from = 0;
};

/// Positional numeration system U = (U(i)), U(0) = 1, strictly increasing,
/// with bounded quotients. Terms are arbitrary precision and materialized
/// lazily; the cache grows under a lock so const access is thread-safe.
class NumSys {
public:
  enum class Generator { values, recurrence, bertrand };

  /// Explicit initial terms extended by a linear recurrence. `alphabet_max`
  /// is checked against the materialized range when given.
  static NumSys from_recurrence(std::vector<BigInt> initial, Recurrence rec,
                                std::optional<Digit> alphabet_max = std::nullopt) {
    if (initial.size() < rec.coeffs.size())
      throw DomainError("recurrence of order " + std::to_string(rec.coeffs.size()) + " needs at least that many " +
                        "initial values, got " + std::to_string(initial.size()));
    if (initial.empty()) throw DomainError("a numeration system needs U(0)");
    NumSys s;
    s.generator_ = Generator::recurrence;
    s.initial_ = initial;
    s.values_ = std::move(initial);
    s.rec_ = std::move(rec);
    s.validate(alphabet_max);
    return s;
  }

  /// A finite list of terms; queries beyond it fail.
  static NumSys from_values(std::vector<BigInt> values, std::optional<Digit> alphabet_max = std::nullopt) {
    if (values.empty()) throw DomainError("a numeration system needs U(0)");
    NumSys s;
    s.generator_ = Generator::values;
    s.initial_ = values;
    s.values_ = std::move(values);
    s.validate(alphabet_max);
    return s;
  }

  /// U(i) = a_1 U(i-1) + ... + a_i U(0) + 1.
  static NumSys bertrand(EPWord a) {
    if (a.at(0) < 1) throw DomainError("Bertrand seed " + to_string(a) + " must start with a nonzero digit");
    NumSys s;
    s.generator_ = Generator::bertrand;
    s.seed_ = std::move(a);
    s.values_ = {BigInt(1)};
    s.validate(std::nullopt);
    return s;
  }

  NumSys(const NumSys& o) {
    std::lock_guard lock(o.mu_);
    copy_from(o);
  }
  NumSys& operator=(const NumSys& o) {
    if (this == &o) return *this;
    std::scoped_lock lock(mu_, o.mu_);
    copy_from(o);
    return *this;
  }

  Generator generator() const { return generator_; }
  const std::optional<EPWord>& seed() const { return seed_; }
  const std::optional<Recurrence>& recurrence() const { return rec_; }
  const std::vector<BigInt>& initial() const { return initial_; }
  Digit alphabet_max() const { return alphabet_max_; }

  /// U(i)
  BigInt value(std::size_t i) const {
    std::lock_guard lock(mu_);
    extend_to(i);
    return values_[i];
  }

  std::vector<BigInt> values(std::size_t count) const {
    std::lock_guard lock(mu_);
    if (count) extend_to(count - 1);
    return {values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(count)};
  }

  /// Terms available without failing (unbounded for generated systems).
  std::optional<std::size_t> size_limit() const {
    if (generator_ == Generator::values) return initial_.size();
    return std::nullopt;
  }

  /// Greedy representation of n; empty for n = 0.
  DigitWord rep(const BigInt& n) const {
    if (n < 0) throw DomainError("cannot represent a negative integer");
    std::lock_guard lock(mu_);
    std::size_t len = 0;
    while (true) {
      extend_to(len);
      if (values_[len] > n) break;
      ++len;
    }
    DigitWord out(len);
    BigInt rest = n;
    for (std::size_t p = 0; p < len; ++p) {
      const BigInt& u = values_[len - 1 - p];
      BigInt q = rest / u;
      rest -= q * u;
      out[p] = static_cast<Digit>(q);
    }
    return out;
  }

  /// Σ w_i U(|w| - i); defined on every digit word.
  BigInt val(std::span<const Digit> w) const {
    std::lock_guard lock(mu_);
    if (!w.empty()) extend_to(w.size() - 1);
    BigInt acc = 0;
    for (std::size_t p = 0; p < w.size(); ++p) acc += values_[w.size() - 1 - p] * w[p];
    return acc;
  }

  /// rep(U(i) - 1) padded with leading zeros to length i: the
  /// lexicographically greatest length-i word of the numeration language.
  DigitWord lex_max(std::size_t i) const {
    {
      std::lock_guard lock(mu_);
      if (i < lex_max_cache_.size() && lex_max_cache_[i]) return *lex_max_cache_[i];
    }
    DigitWord r = rep(value(i) - 1);
    DigitWord padded(i - r.size(), 0);
    padded.insert(padded.end(), r.begin(), r.end());
    std::lock_guard lock(mu_);
    if (lex_max_cache_.size() <= i) lex_max_cache_.resize(i + 1);
    lex_max_cache_[i] = padded;
    return padded;
  }

  /// w ∈ 0* rep(N), decided by comparing every suffix of length i with
  /// lex_max(i).
  bool member(std::span<const Digit> w) const {
    const std::size_t n = w.size();
    for (std::size_t i = 1; i <= n; ++i)
      if (lex_cmp(w.subspan(n - i), lex_max(i)) > 0) return false;
    return true;
  }

  /// A linear recurrence satisfied by the sequence, when the generator
  /// provides one.
  std::optional<LinearRecurrence> linear_recurrence() const {
    auto head = [](const std::vector<Rational>& c) {
      Polynomial p = Polynomial::monomial(c.size());
      for (std::size_t j = 1; j <= c.size(); ++j) p = p - Polynomial::monomial(c.size() - j, c[j - 1]);
      return p;
    };
    if (generator_ == Generator::recurrence) {
      std::vector<Rational> c(rec_->coeffs.begin(), rec_->coeffs.end());
      Polynomial p = head(c);
      if (rec_->addend == 0) return LinearRecurrence{p, initial_.size()};
      return LinearRecurrence{Polynomial({Rational(-1), Rational(1)}) * p, initial_.size() + 1};
    }
    if (generator_ == Generator::bertrand) {
      // U(i) - U(i-n) = Σ_{j<=m+n} a_j U(i-j) - Σ_{j<=m} a_j U(i-n-j), i >= m+n
      const std::size_t m = seed_->preperiod().size(), n = seed_->period().size();
      std::vector<Rational> long_part, short_part;
      for (std::size_t j = 0; j < m + n; ++j) long_part.emplace_back(seed_->at(j));
      for (std::size_t j = 0; j < m; ++j) short_part.emplace_back(seed_->at(j));
      return LinearRecurrence{head(long_part) - head(short_part), m + n};
    }
    return std::nullopt;
  }

private:
  NumSys() = default;

  void copy_from(const NumSys& o) {
    generator_ = o.generator_;
    initial_ = o.initial_;
    rec_ = o.rec_;
    seed_ = o.seed_;
    alphabet_max_ = o.alphabet_max_;
    values_ = o.values_;
    lex_max_cache_ = o.lex_max_cache_;
  }

  static Digit quotient_digit(const BigInt& next, const BigInt& cur) {
    // ceil(next / cur) - 1
    BigInt q = (next + cur - 1) / cur - 1;
    return static_cast<Digit>(q);
  }

  void validate(std::optional<Digit> alphabet_max) {
    if (values_[0] != 1) throw DomainError("U(0) must be 1, got " + values_[0].str());
    for (std::size_t i = 1; i < values_.size(); ++i)
      if (values_[i] <= values_[i - 1])
        throw DomainError("sequence is not strictly increasing at U(" + std::to_string(i) + ")");
    const std::size_t range = generator_ == Generator::values ? initial_.size() : kValidationRange;
    Digit computed = 0;
    alphabet_max_ = ~Digit{0};
    for (std::size_t i = 1; i < range; ++i) {
      extend_to(i);
      computed = std::max(computed, quotient_digit(values_[i], values_[i - 1]));
    }
    if (range == 1) computed = 0;
    if (alphabet_max && *alphabet_max != computed)
      throw DomainError("declared alphabet_max " + std::to_string(*alphabet_max) +
                        " does not match the value " + std::to_string(computed) +
                        " computed on the first " + std::to_string(range) + " terms");
    alphabet_max_ = computed;
  }

  // Caller holds mu_.
  void extend_to(std::size_t i) const {
    while (values_.size() <= i) {
      const std::size_t k = values_.size();
      BigInt next;
      switch (generator_) {
        case Generator::values:
          throw DomainError("term U(" + std::to_string(i) + ") requested but only " +
                            std::to_string(values_.size()) + " values were given");
        case Generator::recurrence:
          next = rec_->addend;
          for (std::size_t j = 1; j <= rec_->coeffs.size(); ++j) next += rec_->coeffs[j - 1] * values_[k - j];
          break;
        case Generator::bertrand:
          next = 1;
          for (std::size_t j = 1; j <= k; ++j) next += values_[k - j] * seed_->at(j - 1);
          break;
      }
      if (next <= values_.back())
        throw DomainError("sequence is not strictly increasing at U(" + std::to_string(k) + ") = " + next.str());
      if (quotient_digit(next, values_.back()) > alphabet_max_)
        throw DomainError("quotient U(" + std::to_string(k) + ")/U(" + std::to_string(k - 1) +
                          ") exceeds the alphabet bound " + std::to_string(alphabet_max_));
      values_.push_back(std::move(next));
    }
  }

  Generator generator_ = Generator::values;
  std::vector<BigInt> initial_;
  std::optional<Recurrence> rec_;
  std::optional<EPWord> seed_;
  Digit alphabet_max_ = 0;
  mutable std::mutex mu_;
  mutable std::vector<BigInt> values_;
  mutable std::vector<std::optional<DigitWord>> lex_max_cache_;
};

inline DigitWord rep_u(const NumSys& s, const BigInt& n) { return s.rep(n); }
inline BigInt val_u(const NumSys& s, std::span<const Digit> w) { return s.val(w); }
inline DigitWord lex_max(const NumSys& s, std::size_t i) { return s.lex_max(i); }
inline bool member(const NumSys& s, std::span<const Digit> w) { return s.member(w); }

/// Which half of w ∈ N ⟺ w0 ∈ N failed.
enum class BertrandDirection {
  prolongability,  // w ∈ N but w0 ∉ N
  prefix_closure,  // w0 ∈ N but w ∉ N
};

inline std::string to_string(BertrandDirection d) {
  return d == BertrandDirection::prolongability ? "prolongability" : "prefix-closure";
}

struct BertrandViolation {
  DigitWord word;      // w
  DigitWord extended;  // w0
  BertrandDirection direction;
};

struct BertrandReport {
  /// Largest L such that the condition holds for every |w| <= L.
  std::size_t holds_up_to = 0;
  std::optional<BertrandViolation> first_violation;
  /// Every violation of the shortest violating length.
  std::vector<BertrandViolation> violations;

  bool holds() const { return !first_violation; }
};

/// Checks w ∈ N ⟺ w0 ∈ N for every |w| <= max_len.
///
/// A shortest violating word has all of its proper suffixes in N, so length
/// k candidates are the words c·s with s a member of length k-1. Memory and
/// time grow like the number of members, i.e. U(max_len).
inline BertrandReport check_bertrand(const NumSys& s, std::size_t max_len) {
  if (max_len < 1) throw DomainError("max_len must be >= 1");
  BertrandReport report;
  std::vector<DigitWord> members{DigitWord{}};
  const Digit amax = s.alphabet_max();
  for (std::size_t k = 0; k <= max_len; ++k) {
    std::vector<DigitWord> next;
    std::vector<DigitWord> candidates;
    if (k == 0)
      candidates.push_back({});
    else {
      candidates.reserve(members.size() * (amax + 1));
      for (Digit c = 0; c <= amax; ++c)
        for (const auto& m : members) {
          DigitWord w{c};
          w.insert(w.end(), m.begin(), m.end());
          candidates.push_back(std::move(w));
        }
    }
    for (auto& w : candidates) {
      DigitWord w0 = w;
      w0.push_back(0);
      const bool in = s.member(w), in0 = s.member(w0);
      if (in != in0)
        report.violations.push_back(
            {w, w0, in ? BertrandDirection::prolongability : BertrandDirection::prefix_closure});
      if (in) next.push_back(std::move(w));
    }
    if (!report.violations.empty()) {
      report.first_violation = report.violations.front();
      report.holds_up_to = k == 0 ? 0 : k - 1;
      return report;
    }
    members = std::move(next);
  }
  report.holds_up_to = max_len;
  return report;
}

/// Number of length-i words in N, by a right-to-left digit DP.
///
/// The state after reading a suffix s of length j records, for each longer
/// length k <= i, whether s <= the last j letters of lex_max(k); prepending
/// a digit c updates each flag by comparing c with the matching letter of
/// lex_max(k). Independent of U(i) itself.
inline BigInt count_words(const NumSys& s, std::size_t i) {
  if (i == 0) return 1;
  std::vector<DigitWord> lm(i + 1);
  for (std::size_t k = 1; k <= i; ++k) lm[k] = s.lex_max(k);
  const Digit amax = s.alphabet_max();
  // bit t of a mask at length j refers to k = j + 1 + t
  std::map<std::vector<bool>, BigInt> states{{std::vector<bool>(i, true), BigInt(1)}};
  for (std::size_t j = 0; j < i; ++j) {
    std::map<std::vector<bool>, BigInt> next;
    for (const auto& [mask, ways] : states) {
      for (Digit c = 0; c <= amax; ++c) {
        const Digit top = lm[j + 1][0];
        if (c > top || (c == top && !mask[0])) continue;
        std::vector<bool> nm(i - j - 1);
        for (std::size_t k = j + 2; k <= i; ++k) {
          const Digit ref = lm[k][k - j - 1];
          nm[k - j - 2] = c < ref || (c == ref && mask[k - j - 1]);
        }
        next[std::move(nm)] += ways;
      }
    }
    states = std::move(next);
  }
  BigInt total = 0;
  for (const auto& [mask, ways] : states) total += ways;
  return total;
}

}  // namespace numeration

#endif  // NUMERATION_NUMSYS_HPP
