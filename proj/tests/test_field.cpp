#include <gtest/gtest.h>

#include <set>

#include "qss/error.hpp"
#include "qss/field.hpp"
#include "qss/rng.hpp"

using namespace qss;

namespace {

Field example_field() { return Field::make(3, Poly{1, 2}); }

// Independent multiplication: schoolbook product of a1 + a2 x and b1 + b2 x
// as a cubic-free polynomial, then remainder mod x^2 + b x + c by long
// division.
Fp2Element oracle_mul(const Field& f, const Fp2Element& x, const Fp2Element& y) {
  const std::int64_t p = f.p();
  std::int64_t c0 = std::int64_t{x.k1.value} * y.k1.value;
  std::int64_t c1 = std::int64_t{x.k1.value} * y.k2.value + std::int64_t{x.k2.value} * y.k1.value;
  std::int64_t c2 = std::int64_t{x.k2.value} * y.k2.value;
  // Subtract c2 * (x^2 + b x + c).
  c1 -= c2 * f.poly().b;
  c0 -= c2 * f.poly().c;
  auto red = [p](std::int64_t v) { return ((v % p) + p) % p; };
  return f.element(red(c0), red(c1));
}

}  // namespace

TEST(Field, ExamplePolynomialIsAccepted) {
  const Field f = example_field();
  EXPECT_EQ(f.p(), 3u);
  EXPECT_EQ(f.d(), 9u);
  // theta^2 = -theta - 2 = 2 theta + 1
  EXPECT_EQ(f.theta_sq(), f.element(1, 2));
  EXPECT_EQ(f.mul(f.theta(), f.theta()), f.element(1, 2));
}

TEST(Field, DefaultPolynomialIsLexSmallest) {
  // x^2 + 0x + 0 has the root 0; x^2 + 1 has none mod 3.
  EXPECT_EQ(Field::make(3).poly(), (Poly{0, 1}));
  // Brute force the lex-smallest irreducible for several primes.
  for (std::int64_t p : {5, 7, 11, 13}) {
    std::optional<Poly> expected;
    for (std::uint32_t b = 0; b < p && !expected; ++b) {
      for (std::uint32_t c = 0; c < p && !expected; ++c) {
        bool root = false;
        for (std::int64_t x = 0; x < p; ++x) root |= (x * x + b * x + c) % p == 0;
        if (!root) expected = Poly{b, c};
      }
    }
    EXPECT_EQ(Field::make(p).poly(), *expected) << "p=" << p;
  }
}

TEST(Field, RejectsBadModuli) {
  EXPECT_THROW(Field::make(4), PrimeError);
  EXPECT_THROW(Field::make(2), PrimeError);
  EXPECT_THROW(Field::make(1), PrimeError);
  EXPECT_THROW(Field::make(-3), PrimeError);
  EXPECT_THROW(Field::make(37), PrimeError);
  EXPECT_NO_THROW(Field::make(37, std::nullopt, FieldOptions{true}));
  EXPECT_THROW(Field::make(3, Poly{0, 2}), ReducibleError);  // x^2 - 1
  EXPECT_THROW(Field::make(3, Poly{1, 5}), ReducibleError);  // unreduced coefficient
}

TEST(Field, Irreducibility) {
  EXPECT_TRUE(is_irreducible({1, 2}, 3));
  EXPECT_TRUE(is_irreducible({0, 1}, 3));
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) EXPECT_FALSE(is_irreducible({0, p - 1}, p));
  EXPECT_FALSE(is_irreducible({0, 1}, 5));  // -1 = 4 = 2^2 mod 5
}

TEST(Field, AdditionExamples) {
  const Field f = example_field();
  EXPECT_EQ(f.add(f.element(1, 1), f.element(2, 2)), f.zero());
  const Fp2Element a = f.element(2, 1);
  EXPECT_EQ(f.add(a, f.zero()), a);
  EXPECT_EQ(f.add(a, f.neg(a)), f.zero());
  const std::vector<Fp2Element> xs{f.theta(), f.one(), f.theta(), f.element(1, 1)};
  EXPECT_EQ(f.sum(xs), f.element(2, 0));
}

TEST(Field, MultiplicationExamples) {
  const Field f = example_field();
  // (theta + 1)^2 = theta^2 + 2 theta + 1 = (2 theta + 1) + 2 theta + 1 = theta + 2
  EXPECT_EQ(f.mul(f.element(1, 1), f.element(1, 1)), f.element(2, 1));
  const Fp2Element a = f.element(2, 1);
  EXPECT_EQ(f.mul(a, f.one()), a);
}

TEST(Field, MultiplicationMatchesLongDivisionOracle) {
  for (std::int64_t p : {3, 5, 7}) {
    const Field f = Field::make(p);
    for (const auto& x : f.elements()) {
      for (const auto& y : f.elements()) ASSERT_EQ(f.mul(x, y), oracle_mul(f, x, y));
    }
  }
  const Field f = example_field();
  for (const auto& x : f.elements()) {
    for (const auto& y : f.elements()) ASSERT_EQ(f.mul(x, y), oracle_mul(f, x, y));
  }
}

TEST(Field, FieldAxiomsOnRandomTriples) {
  Rng rng(7);
  for (std::int64_t p : {3, 5, 7, 31}) {
    const Field f = Field::make(p);
    for (int i = 0; i < 500; ++i) {
      const auto x = rng.element(f), y = rng.element(f), z = rng.element(f);
      ASSERT_EQ(f.add(x, y), f.add(y, x));
      ASSERT_EQ(f.mul(x, y), f.mul(y, x));
      ASSERT_EQ(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
      ASSERT_EQ(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
      ASSERT_EQ(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
      if (x != f.zero()) { ASSERT_EQ(f.mul(x, f.inverse(x)), f.one()); }
    }
  }
  EXPECT_THROW(example_field().inverse(example_field().zero()), RangeError);
}

TEST(Field, Frobenius) {
  const Field f = example_field();
  EXPECT_EQ(f.frobenius(f.theta()), f.element(2, 2));
  for (const auto& a : f.elements()) EXPECT_EQ(f.frobenius(f.frobenius(a)), a);
  for (std::uint32_t k = 0; k < 3; ++k) EXPECT_EQ(f.frobenius(f.element(k, 0)), f.element(k, 0));
  // Ring homomorphism.
  for (std::int64_t p : {3, 5, 7}) {
    const Field g = Field::make(p);
    for (const auto& x : g.elements()) {
      for (const auto& y : g.elements()) {
        ASSERT_EQ(g.frobenius(g.mul(x, y)), g.mul(g.frobenius(x), g.frobenius(y)));
      }
    }
  }
}

TEST(Field, TraceExamples) {
  const Field f = example_field();
  const auto tr = [&](const Fp2Element& a) { return f.trace(a); };
  EXPECT_EQ(f.fp_sub(tr(f.theta()), tr(f.element(2, 0))).value, 1u);
  EXPECT_EQ(f.fp_sub(tr(f.theta_sq()), tr(f.element(0, 2))).value, 2u);
  for (std::uint32_t k = 0; k < 3; ++k) EXPECT_EQ(tr(f.element(k, 0)), f.fp(2 * k));
}

TEST(Field, TraceIsLinear) {
  auto check = [](const Field& f, const std::vector<std::pair<Fp2Element, Fp2Element>>& pairs) {
    for (const auto& [x, y] : pairs) {
      ASSERT_EQ(f.trace(f.add(x, y)), f.fp_add(f.trace(x), f.trace(y)));
      for (std::uint32_t lam = 0; lam < f.p(); ++lam) {
        ASSERT_EQ(f.trace(f.scale({lam}, x)), f.fp_mul({lam}, f.trace(x)));
      }
    }
  };
  {
    const Field f = example_field();
    std::vector<std::pair<Fp2Element, Fp2Element>> all;
    for (const auto& x : f.elements()) {
      for (const auto& y : f.elements()) all.emplace_back(x, y);
    }
    check(f, all);
  }
  Rng rng(11);
  for (std::int64_t p : {5, 7}) {
    const Field f = Field::make(p);
    std::vector<std::pair<Fp2Element, Fp2Element>> sample;
    for (int i = 0; i < 200; ++i) sample.emplace_back(rng.element(f), rng.element(f));
    check(f, sample);
  }
}

TEST(Field, IndexMap) {
  const Field f = example_field();
  EXPECT_EQ(f.index(f.element(2, 2)), 8u);
  EXPECT_THROW(f.from_index(9), RangeError);
  EXPECT_THROW(f.from_index(-1), RangeError);
  for (std::int64_t p : {3, 5, 7}) {
    const Field g = Field::make(p);
    std::set<std::size_t> seen;
    for (const auto& a : g.elements()) {
      EXPECT_EQ(g.from_index(static_cast<std::int64_t>(g.index(a))), a);
      seen.insert(g.index(a));
    }
    EXPECT_EQ(seen.size(), g.d());
  }
}

TEST(Field, IndexSuccessorCarriesIntoTheta) {
  // l = 2 theta + p - 1  ->  l + 1 = 3 theta  (p > 3)
  for (std::int64_t p : {5, 7, 11}) {
    const Field f = Field::make(p);
    EXPECT_EQ(f.index_successor(f.element(p - 1, 2)), f.element(0, 3));
  }
}

TEST(Field, EnumerationOrder) {
  const Field f = example_field();
  const auto els = f.elements();
  ASSERT_EQ(els.size(), 9u);
  const std::vector<Fp2Element> expected{f.element(0, 0), f.element(1, 0), f.element(2, 0),
                                         f.element(0, 1), f.element(1, 1), f.element(2, 1),
                                         f.element(0, 2), f.element(1, 2), f.element(2, 2)};
  EXPECT_EQ(els, expected);
  for (std::size_t i = 0; i < els.size(); ++i) EXPECT_EQ(f.index(els[i]), i);
}

TEST(Field, ForeignElementsRaiseContextError) {
  const Field f = example_field();
  const Fp2Element foreign{{4}, {0}};
  EXPECT_THROW(f.add(foreign, f.one()), ContextError);
  EXPECT_THROW(f.mul(f.one(), foreign), ContextError);
}

TEST(Field, Formatting) {
  const Field f = example_field();
  EXPECT_EQ(f.format(f.zero()), "0");
  EXPECT_EQ(f.format(f.element(2, 0)), "2");
  EXPECT_EQ(f.format(f.theta()), "t");
  EXPECT_EQ(f.format(f.element(1, 2)), "1+2*t");
}
