#include "lav/nf.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lav;

namespace {

const NumberFieldData& K() {
  static NumberFieldData k = nf_load(sqrt2_document());
  return k;
}

FieldElement el(long long a, long long b) { return K().from_power_basis({Rat(a), Rat(b)}); }

}  // namespace

TEST(NumberField, ArithmeticMatchesClosedForms) {
  const auto& k = K();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    long long a = static_cast<long long>(rng() % 41) - 20, b = static_cast<long long>(rng() % 41) - 20;
    long long c = static_cast<long long>(rng() % 41) - 20, d = static_cast<long long>(rng() % 41) - 20;
    auto x = el(a, b), y = el(c, d);
    // (a + b r)(c + d r) = ac + 2bd + (ad + bc) r
    EXPECT_EQ(k.mul(x, y), el(a * c + 2 * b * d, a * d + b * c));
    EXPECT_EQ(k.norm(x), Rat(a * a - 2 * b * b));
    EXPECT_EQ(k.trace(x), Rat(2 * a));
    auto e = k.embed(x);
    double s2 = std::sqrt(2.0) * (k.embed(el(0, 1))[0].real() > 0 ? 1 : -1);
    EXPECT_NEAR(static_cast<double>(e[0].real()), a + b * s2, 1e-9);
    EXPECT_NEAR(static_cast<double>(e[1].real()), a - b * s2, 1e-9);
    if (a != 0 || b != 0) EXPECT_EQ(k.mul(x, k.inverse(x)), k.from_int(1));
  }
  EXPECT_TRUE(k.is_unit(el(1, 1)));
  EXPECT_FALSE(k.is_unit(el(3, 1)));
  EXPECT_EQ(k.r1, 2);
  EXPECT_EQ(k.discriminant, Int(8));
}

TEST(NumberField, PrimesAboveSevenMultiplyToSeven) {
  const auto& k = K();
  auto ps = primes_above(k, 7);
  ASSERT_EQ(ps.size(), 2u);
  for (const auto& p : ps) EXPECT_EQ(k.ideal_norm(p), Int(7));
  EXPECT_EQ(k.ideal_mul(ps[0], ps[1]).hnf, k.principal(k.from_int(7)).hnf);
  // 3 + r and 3 - r generate the two primes
  int hits = 0;
  for (const auto& p : ps) hits += k.ideal_contains(p, el(3, 1)) + 2 * k.ideal_contains(p, el(3, -1));
  EXPECT_EQ(hits, 3);
  EXPECT_TRUE(is_totally_split(k, 7));
  EXPECT_FALSE(is_totally_split(k, 5));  // 2 is not a square mod 5
  EXPECT_EQ(k.ideal_norm(k.ideal_pow(ps[0], 3)), Int(343));
}

TEST(NumberField, LocalIsomorphismIsARingMap) {
  const auto& k = K();
  for (const auto& prime : primes_above(k, 7))
    for (int m = 1; m <= 3; ++m) {
      auto iso = split_local_iso(k, 7, prime, m);
      long long q = iso.modulus;
      // r^2 = 2 in Z/7^m and the prime maps to 0
      long long r = iso.reduce(el(0, 1));
      EXPECT_EQ(mulmod(r, r, q), 2);
      for (const auto& b : k.ideal_basis(k.ideal_pow(prime, m))) EXPECT_EQ(iso.reduce(b), 0);
      std::mt19937_64 rng(m);
      for (int i = 0; i < 50; ++i) {
        auto x = el(static_cast<long long>(rng() % 200) - 100, static_cast<long long>(rng() % 200) - 100);
        auto y = el(static_cast<long long>(rng() % 200) - 100, static_cast<long long>(rng() % 200) - 100);
        EXPECT_EQ(iso.reduce(k.mul(x, y)), mulmod(iso.reduce(x), iso.reduce(y), q));
        EXPECT_EQ(iso.reduce(k.add(x, y)), mod(iso.reduce(x) + iso.reduce(y), q));
      }
      auto e = local_idempotent(k, iso);
      EXPECT_EQ(iso.reduce(e), 1);
      for (const auto& other : primes_above(k, 7))
        if (other.hnf != prime.hnf) EXPECT_EQ(split_local_iso(k, 7, other, m).reduce(e), 0);
    }
}

TEST(NumberField, AdditiveCharacterOfIntegersIsTrivial) {
  const auto& k = K();
  EXPECT_EQ(efin_phase(k, el(5, -3)), Rat(0));
  // efin(x) = e(-{Tr x}): Tr(1/3) = 2/3
  EXPECT_EQ(efin_phase(k, k.from_rational(make_rat(1, 3))), make_rat(1, 3));
}

TEST(NumberField, LoaderRejectsInconsistentDocuments) {
  auto doc = sqrt2_document();
  auto bad = doc;
  bad["discriminant"] = "12";
  EXPECT_THROW(nf_load(bad), InputError);
  bad = doc;
  bad["min_poly"] = {"-2", "0", "2"};
  EXPECT_THROW(nf_load(bad), InputError);
  bad = doc;
  bad["unit_gens"] = {{"-1", "0"}, {"3", "1"}};
  EXPECT_THROW(nf_load(bad), InputError);
  bad = doc;
  bad["class_number"] = 2;
  EXPECT_THROW(nf_load(bad), InputError);
  bad = doc;
  bad.erase("min_poly");
  EXPECT_THROW(nf_load(bad), InputError);
  EXPECT_THROW(nf_load_file("/nonexistent/field.json"), InputError);
  auto q = nf_load(rationals_document());
  EXPECT_EQ(q.degree, 1);
  EXPECT_EQ(primes_above(q, 5).size(), 1u);
}
