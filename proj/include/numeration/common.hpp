#ifndef NUMERATION_COMMON_HPP
#define NUMERATION_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace numeration {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using Digit = std::uint32_t;

/// A mathematical precondition or domain rule was violated (bad Parry word,
/// unresolved base, non-simple base where a simple one is required, ...).
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (word, base or system syntax).
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Interval refinement could not separate a value from a boundary within
/// the configured budget.
class RefinementError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Which of the two Bertrand systems attached to a base is meant: the one
/// seeded by the quasi-greedy expansion of 1, or by the greedy one.
enum class Variant { canonical, noncanonical };

inline std::string to_string(Variant v) {
  return v == Variant::canonical ? "canonical" : "noncanonical";
}

inline Variant parse_variant(const std::string& s) {
  if (s == "canonical") return Variant::canonical;
  if (s == "noncanonical" || s == "non-canonical") return Variant::noncanonical;
  throw ParseError("unknown variant '" + s + "'");
}

inline Rational floor_div(const Rational& q) {
  BigInt n = boost::multiprecision::numerator(q);
  BigInt d = boost::multiprecision::denominator(q);
  BigInt f = n / d;
  if (n % d != 0 && n < 0) f -= 1;
  return Rational(f);
}

inline BigInt floor_int(const Rational& q) {
  return boost::multiprecision::numerator(floor_div(q));
}

}  // namespace numeration

#endif  // NUMERATION_COMMON_HPP
