#include <gtest/gtest.h>

#include "support.hpp"

using namespace numeration;
using namespace testsupport;

namespace {

struct ParryFixture {
  std::string name;
  RealBase base;
  bool simple;
};

std::vector<ParryFixture> parry_fixtures() {
  return {{"2", RealBase::integer(2), true},
          {"3", RealBase::integer(3), true},
          {"phi", phi(), true},
          {"phi^2", phi2(), false},
          {"tribonacci", tribonacci(), true}};
}

}  // namespace

TEST(Bertrand, BuildExamples) {
  EXPECT_EQ(build_bertrand(phi(), Variant::canonical).system.values(5), (std::vector<BigInt>{1, 2, 3, 5, 8}));
  EXPECT_EQ(build_bertrand(phi(), Variant::noncanonical).system.values(5), (std::vector<BigInt>{1, 2, 4, 7, 12}));
  EXPECT_EQ(build_bertrand(RealBase::integer(3), Variant::noncanonical).system.values(4),
            (std::vector<BigInt>{1, 4, 13, 40}));
  EXPECT_THROW(build_bertrand(parse_base("rat:5/2"), Variant::canonical, 20), DomainError);
}

TEST(Bertrand, NonSimpleVariantsCoincide) {
  const auto c = build_bertrand(phi2(), Variant::canonical);
  const auto n = build_bertrand(phi2(), Variant::noncanonical);
  EXPECT_TRUE(n.variants_coincide);
  EXPECT_EQ(c.system.values(30), n.system.values(30));
  EXPECT_FALSE(build_bertrand(phi(), Variant::noncanonical).variants_coincide);
}

TEST(Bertrand, AlphabetAndRenewalResidual) {
  for (const auto& f : parry_fixtures())
    for (Variant v : {Variant::canonical, Variant::noncanonical}) {
      SCOPED_TRACE(f.name + " " + to_string(v));
      const auto b = build_bertrand(f.base, v);
      const Interval iv = f.base.enclosure(pow10_inv(6));
      const BigInt fl = floor_int(iv.lo);
      const bool integral = f.base.exact_value().has_value();
      // ⌈β⌉ - 1 for canonical, ⌊β⌋ for noncanonical (when β is simple Parry)
      const BigInt expected = v == Variant::canonical || !f.simple ? (integral ? fl - 1 : fl) : fl;
      EXPECT_EQ(BigInt(b.system.alphabet_max()), expected);
      const EPWord a = b.seed;
      const auto u = b.system.values(31);
      for (std::size_t i = 0; i <= 30; ++i) {
        BigInt r = u[i];
        for (std::size_t j = 1; j <= i; ++j) r -= a.at(j - 1) * u[i - j];
        EXPECT_EQ(r, 1) << "i=" << i;
      }
    }
}

TEST(Bertrand, CharPolyExamples) {
  EXPECT_EQ(char_poly(E("(10)"), Variant::canonical).to_string(), "X^2 - X - 1");
  EXPECT_EQ(char_poly(E("11(0)"), Variant::canonical).to_string(), "X^2 - X - 1");
  EXPECT_EQ(char_poly(E("11(0)"), Variant::noncanonical).to_string(), "X^3 - 2X^2 + 1");
  EXPECT_EQ(char_poly(E("3(0)"), Variant::noncanonical).to_string(), "X^2 - 4X + 3");
  EXPECT_EQ(char_poly(E("2(1)"), Variant::canonical).to_string(), "X^2 - 3X + 1");
  EXPECT_THROW(char_poly(E("2(1)"), Variant::noncanonical), DomainError);
}

TEST(Bertrand, CharPolyReproducesSequences) {
  for (const auto& f : parry_fixtures())
    for (Variant v : {Variant::canonical, Variant::noncanonical}) {
      if (v == Variant::noncanonical && !f.simple) continue;
      const auto b = build_bertrand(f.base, v);
      const EPWord word = v == Variant::canonical ? f.base.quasi_greedy_word() : f.base.greedy_word();
      const Polynomial p = char_poly(word, v);
      EXPECT_FALSE(recurrence_mismatch(p, b.system, 30)) << f.name << " " << to_string(v);
      // β is a root of the polynomial
      EXPECT_EQ(p % f.base.polynomial(), Polynomial()) << f.name;
    }
  // a wrong polynomial is caught
  const auto z = build_bertrand(phi(), Variant::noncanonical).system;
  EXPECT_EQ(recurrence_mismatch(Polynomial::from_high_first({1, -1, -1}), z, 30), std::optional<std::size_t>(2));
}

TEST(Bertrand, SystemsIdentical) {
  const NumSys z = fixture("zeckendorf");
  EXPECT_EQ(systems_identical(z, NumSys::bertrand(E("(10)"))), std::optional<bool>(true));
  EXPECT_EQ(systems_identical(z, fixture("ncphi")), std::optional<bool>(false));
  EXPECT_EQ(systems_identical(fixture("ncphi"), NumSys::bertrand(E("11(0)"))), std::optional<bool>(true));
}

TEST(Bertrand, ClassifyExamples) {
  const auto z = classify_bertrand(fixture("zeckendorf"), 10);
  EXPECT_EQ(z.kind, Classification::Case::case2);
  EXPECT_TRUE(z.certified);
  ASSERT_TRUE(z.base);
  EXPECT_EQ(z.base->polynomial().primitive_integral().to_string(), "X^2 - X - 1");

  const auto t = classify_bertrand(fixture("base3_noncanonical"), 10);
  EXPECT_EQ(t.kind, Classification::Case::case3);
  ASSERT_TRUE(t.base);
  EXPECT_EQ(t.base->exact_value(), std::optional<Rational>(3));

  const auto s = classify_bertrand(fixture("successor"), 10);
  EXPECT_EQ(s.kind, Classification::Case::case1);

  const auto n = classify_bertrand(fixture("ex31_nonprolongable"), 10);
  EXPECT_EQ(n.kind, Classification::Case::not_bertrand);
  ASSERT_TRUE(n.witness);
  EXPECT_EQ(n.witness->word, W("2"));
}

TEST(Bertrand, ClassifyRoundTrip) {
  for (const auto& f : parry_fixtures())
    for (Variant v : {Variant::canonical, Variant::noncanonical}) {
      SCOPED_TRACE(f.name + " " + to_string(v));
      const auto b = build_bertrand(f.base, v);
      // rebuild from raw values so the classifier sees no seed
      const NumSys plain = NumSys::from_values(b.system.values(40));
      const auto c = classify_bertrand(plain, 10);
      const bool expect_case3 = v == Variant::noncanonical && f.simple;
      EXPECT_EQ(c.kind, expect_case3 ? Classification::Case::case3 : Classification::Case::case2);
      ASSERT_TRUE(c.base);
      // same β: polynomials share the root inside the recovered interval
      const Polynomial g = gcd(c.base->polynomial(), f.base.polynomial());
      ASSERT_GE(g.degree(), 1);
      const Interval iv = c.base->enclosure(pow10_inv(12));
      EXPECT_TRUE(f.base.enclosure(pow10_inv(12)).overlaps(iv));
      EXPECT_EQ(count_roots(g, iv.lo - pow10_inv(12), iv.hi), 1);
      EXPECT_EQ(c.shifts_coincide, !f.simple);
    }
}

TEST(Bertrand, ClassifyUncertifiedWhenProbeTooShort) {
  // values of the a = 2(1) system without a generator: no certificate possible
  const NumSys s = NumSys::from_values({1, 3, 8, 21, 55, 144});
  const auto c = classify_bertrand(s, 10);
  EXPECT_EQ(c.probe_len, 4u);
  EXPECT_EQ(c.kind, Classification::Case::case2);
  ASSERT_TRUE(c.a);
  EXPECT_EQ(*c.a, E("2(1)"));
  EXPECT_FALSE(c.certified);
  EXPECT_THROW(classify_bertrand(NumSys::from_values({1, 3, 8}), 10), DomainError);
}

TEST(Bertrand, CountingIdentity) {
  for (const auto& f : parry_fixtures()) {
    if (!f.simple) {
      EXPECT_THROW(counting_identity_check(f.base, 10), DomainError);
      continue;
    }
    const auto r = counting_identity_check(f.base, 20);
    EXPECT_FALSE(r.first_failure) << f.name;
    EXPECT_EQ(r.checked, 21u);
  }
  const auto c = build_bertrand(phi(), Variant::canonical).system;
  const auto n = build_bertrand(phi(), Variant::noncanonical).system;
  EXPECT_EQ(n.value(4), 12);
  EXPECT_EQ(c.value(4) + n.value(2), 12);
  const auto c3 = build_bertrand(RealBase::integer(3), Variant::canonical).system;
  const auto n3 = build_bertrand(RealBase::integer(3), Variant::noncanonical).system;
  EXPECT_EQ(n3.value(3), 40);
  EXPECT_EQ(c3.value(3) + n3.value(2), 40);
}
