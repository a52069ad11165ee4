#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "pgkit/errors.hpp"
#include "pgkit/galois.hpp"

using namespace pgkit;

namespace {

struct PK {
  std::uint32_t p, k;
};

const PK kFields[] = {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 8}, {3, 1}, {3, 2}, {3, 3},
                      {3, 4}, {5, 1}, {5, 2}, {5, 3}, {7, 1}, {7, 2}, {11, 1}, {13, 2}};

}  // namespace

TEST(Galois, Gf8PowersOfAlpha) {
  const auto f = GaloisField::make(2, 3);
  EXPECT_EQ(f.spec().prim_poly, (std::vector<std::uint32_t>{1, 1, 0, 1}));
  auto code = [&](std::vector<std::uint32_t> c) { return f.from_coeffs(c); };
  EXPECT_EQ(f.generator_power(3), code({1, 1, 0}));
  EXPECT_EQ(f.generator_power(4), code({0, 1, 1}));
  EXPECT_EQ(f.generator_power(5), code({1, 1, 1}));
  EXPECT_EQ(f.generator_power(6), code({1, 0, 1}));
  EXPECT_EQ(f.generator_power(7), f.one());
}

TEST(Galois, ElementsListsZeroThenPowers) {
  const auto f = GaloisField::make(3, 2);
  const auto e = f.elements();
  ASSERT_EQ(e.size(), 9u);
  EXPECT_EQ(e[0], f.zero());
  for (std::uint32_t t = 1; t < 9; ++t) EXPECT_EQ(e[t], f.generator_power(t - 1));
}

TEST(Galois, MultiplicationMatchesPolynomialProduct) {
  for (auto [p, k] : kFields) {
    const auto f = GaloisField::make(p, k);
    const auto& m = f.spec().prim_poly;
    std::mt19937 rng(p * 100 + k);
    std::uniform_int_distribution<std::uint32_t> pick(0, f.order() - 1);
    for (int t = 0; t < 300; ++t) {
      const FieldElement a{pick(rng)}, b{pick(rng)};
      const auto want = oracle::to_code(oracle::mul_mod(oracle::from_code(a.code, p), oracle::from_code(b.code, p), m, p), p);
      ASSERT_EQ(f.mul(a, b).code, want) << "GF(" << p << "^" << k << ")";
    }
  }
}

TEST(Galois, AdditionIsDigitwise) {
  for (auto [p, k] : kFields) {
    const auto f = GaloisField::make(p, k);
    std::mt19937 rng(k * 31 + p);
    std::uniform_int_distribution<std::uint32_t> pick(0, f.order() - 1);
    for (int t = 0; t < 200; ++t) {
      const FieldElement a{pick(rng)}, b{pick(rng)};
      auto ca = f.coeffs(a), cb = f.coeffs(b);
      std::vector<std::uint32_t> sum(k);
      for (std::uint32_t i = 0; i < k; ++i) sum[i] = (ca[i] + cb[i]) % p;
      ASSERT_EQ(f.add(a, b), f.from_coeffs(sum));
      ASSERT_EQ(f.sub(f.add(a, b), b), a);
      ASSERT_EQ(f.add(a, f.neg(a)), f.zero());
    }
  }
}

TEST(Galois, FieldAxioms) {
  for (auto [p, k] : kFields) {
    const auto f = GaloisField::make(p, k);
    std::mt19937 rng(p ^ (k << 8));
    std::uniform_int_distribution<std::uint32_t> pick(0, f.order() - 1);
    for (int t = 0; t < 200; ++t) {
      const FieldElement a{pick(rng)}, b{pick(rng)}, c{pick(rng)};
      ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      ASSERT_EQ(f.mul(a, b), f.mul(b, a));
      ASSERT_EQ(f.mul(a, f.one()), a);
      if (a != f.zero()) ASSERT_EQ(f.mul(a, f.inv(a)), f.one());
    }
  }
}

TEST(Galois, GeneratorHasFullOrder) {
  for (auto [p, k] : kFields) {
    const auto f = GaloisField::make(p, k);
    std::set<std::uint32_t> seen;
    for (std::uint32_t e = 0; e + 1 < f.order(); ++e) seen.insert(f.generator_power(e).code);
    EXPECT_EQ(seen.size(), f.order() - 1);
    EXPECT_EQ(seen.count(0), 0u);
    for (std::uint32_t e = 0; e + 1 < f.order(); ++e) ASSERT_EQ(f.log(f.generator_power(e)), e);
    EXPECT_FALSE(f.log(f.zero()).has_value());
  }
}

TEST(Galois, FrobeniusIsPthPowerAndAdditive) {
  for (auto [p, k] : kFields) {
    const auto f = GaloisField::make(p, k);
    for (std::uint32_t a = 0; a < std::min<std::uint32_t>(f.order(), 300); ++a) {
      const FieldElement x{a}, y{(a * 7 + 3) % f.order()};
      ASSERT_EQ(f.frobenius(x), f.pow(x, p));
      ASSERT_EQ(f.frobenius(f.add(x, y)), f.add(f.frobenius(x), f.frobenius(y)));
    }
  }
}

TEST(Galois, PowHandlesNegativeExponents) {
  const auto f = GaloisField::make(5, 2);
  const auto g = f.generator_power(1);
  EXPECT_EQ(f.pow(g, -1), f.inv(g));
  EXPECT_EQ(f.pow(g, 24), f.one());
  EXPECT_EQ(f.pow(f.zero(), 0), f.one());
  EXPECT_EQ(f.pow(f.zero(), 5), f.zero());
}

TEST(Galois, PrimitivityAgreesWithBruteForceOrder) {
  // Order of x modulo every monic polynomial of small degree.
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (std::uint32_t k = 1; k <= (p == 2 ? 6u : 3u); ++k) {
      std::uint32_t s = 1;
      for (std::uint32_t t = 0; t < k; ++t) s *= p;
      for (std::uint32_t low = 0; low < s; ++low) {
        oracle::Poly m = oracle::from_code(low, p);
        m.resize(k, 0);
        m.push_back(1);
        bool primitive = m[0] != 0;
        if (primitive) {
          oracle::Poly x = oracle::trim({0, 1});
          oracle::Poly cur = oracle::trim({1});
          std::uint32_t order = 0;
          for (std::uint32_t e = 1; e < s; ++e) {
            cur = oracle::mul_mod(cur, x, m, p);
            if (cur == oracle::Poly{1}) {
              order = e;
              break;
            }
          }
          primitive = order == s - 1;
        }
        ASSERT_EQ(is_primitive_polynomial(p, m), primitive) << "p=" << p << " low=" << low;
      }
    }
  }
}

TEST(Galois, DefaultSpecIsPrimitive) {
  for (auto [p, k] : kFields) {
    const auto spec = GaloisField::default_spec(p, k);
    EXPECT_EQ(spec.prim_poly.size(), k + 1);
    EXPECT_TRUE(is_primitive_polynomial(p, spec.prim_poly));
  }
}

TEST(Galois, PrimeHelpers) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(1048573));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(prime_power(49), (std::pair<std::uint32_t, std::uint32_t>{7, 2}));
  EXPECT_EQ(prime_power(1024), (std::pair<std::uint32_t, std::uint32_t>{2, 10}));
  EXPECT_FALSE(prime_power(12).has_value());
  EXPECT_FALSE(prime_power(1).has_value());
}

TEST(Galois, Errors) {
  EXPECT_THROW(GaloisField::make(4, 2), std::invalid_argument);
  EXPECT_THROW(GaloisField::make(2, 21), ResourceError);
  EXPECT_THROW(GaloisField::make(2, 0), std::invalid_argument);
  EXPECT_THROW(GaloisField::with_polynomial(2, {1, 1, 1, 1, 1}), ConfigError);  // x^4+x^3+x^2+x+1 has order 5
  const auto f = GaloisField::make(3, 2);
  EXPECT_THROW(f.inv(f.zero()), std::domain_error);
}

TEST(Galois, ExplicitPolynomialGivesSameFieldSize) {
  const auto f = GaloisField::with_polynomial(2, {1, 0, 1, 1});  // x^3 + x^2 + 1
  EXPECT_EQ(f.order(), 8u);
  EXPECT_EQ(f.generator_power(3), f.from_coeffs(std::vector<std::uint32_t>{1, 0, 1}));
}
