#include "lav/cones.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace lav;

namespace {

const NumberFieldData& Qf() {
  static NumberFieldData q = nf_load(rationals_document());
  return q;
}

const NumberFieldData& K() {
  static NumberFieldData k = nf_load(sqrt2_document());
  return k;
}

FieldElement el(long long a, long long b) { return K().from_power_basis({Rat(a), Rat(b)}); }

IntegralIdeal P7() {
  for (const auto& P : primes_above(K(), 7))
    if (K().ideal_contains(P, el(3, 1))) return P;
  throw std::logic_error("no prime over 7 contains 3 + sqrt2");
}

}  // namespace

TEST(Cones, RationalCountsMatchDirectLoop) {
  auto P = primes_above(Qf(), 5)[0];
  EXPECT_EQ(count_progression(Qf(), Qf().from_int(1), P, 5, 1, 100).count, 20);
  EXPECT_EQ(count_progression(Qf(), Qf().from_int(1), P, 5, 1, 1).count, 1);
  for (long long alpha : {1, 2, -3, 7})
    for (int n : {1, 2})
      for (double x : {10.0, 77.0, 1000.0}) {
        long long m = ipow(5, n), ref = 0;
        // alpha (1 + 5^n Z) = alpha + alpha 5^n Z
        for (long long b = 1; b <= static_cast<long long>(x); ++b)
          if ((b - alpha) % (std::llabs(alpha) * m) == 0) ++ref;
        EXPECT_EQ(count_progression(Qf(), Qf().from_int(alpha), P, 5, n, x).count, ref) << alpha << " " << n << " " << x;
      }
  EXPECT_THROW(count_progression(Qf(), Qf().from_int(10), P, 5, 1, 100), InputError);
  EXPECT_THROW(count_progression(Qf(), Qf().from_int(1), P, 5, 1, 0.5), InputError);
}

TEST(Cones, RationalMinimalNorms) {
  auto P = primes_above(Qf(), 5)[0];
  for (int n = 1; n <= 3; ++n) {
    long long m = ipow(5, n), dom = 0, nonunit = 0;
    for (long long k = 1; !dom; ++k) dom = 1 + k * m;  // positive, not 1
    for (long long a = 2; !nonunit; ++a)
      if ((a - 1) % m == 0 || (a + 1) % m == 0) nonunit = a;
    EXPECT_EQ(min_norm_coset(Qf(), P, 5, n), Rat(dom));
    EXPECT_EQ(min_norm_coset(Qf(), P, 5, n, MinNormMode::kNonUnit), Rat(nonunit));
  }
  EXPECT_EQ(min_norm_coset(Qf(), P, 5, 2), Rat(26));
  EXPECT_EQ(min_norm_coset(Qf(), P, 5, 2, MinNormMode::kNonUnit), Rat(24));
}

TEST(Cones, TorsionRepresentativesAreMinimal) {
  auto P = primes_above(Qf(), 5)[0];
  std::vector<long long> expect{2, 7, 57};
  for (int n = 1; n <= 3; ++n) {
    auto g = rcg_build(Qf(), 5, P, n);
    auto r = torsion_norm_bound(g);
    ASSERT_EQ(r.delta_order, 2u);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.rows[0].rep, expect[n - 1]);
    EXPECT_EQ(g.residue_class(r.rows[0].rep), r.rows[0].cls);
    for (long long m = 1; m < r.rows[0].rep; ++m)
      if (m % 5) EXPECT_NE(g.residue_class(m), r.rows[0].cls) << m;
  }
  auto gk = rcg_build(K(), 7, P7(), 2);
  auto rk = torsion_norm_bound(gk);
  EXPECT_TRUE(rk.vacuous);
  EXPECT_TRUE(rk.rows.empty());
}

TEST(Cones, RealQuadraticDecomposition) {
  const auto& k = K();
  auto dec = build_cones(k);
  // 3 +- 2 sqrt2, whichever has sigma_1 > 1
  EXPECT_TRUE(dec.eps_plus == el(3, 2) || dec.eps_plus == el(3, -2));
  EXPECT_NEAR(static_cast<double>(k.embed(dec.eps_plus)[0].real()), 3 + 2 * std::sqrt(2.0), 1e-12);
  ASSERT_FALSE(dec.cones.empty());
  for (const auto& c : dec.cones) {
    EXPECT_GT(c.coherence, 0);
    EXPECT_TRUE(std::isfinite(c.coherence));
  }
  DomainReducer red(k);
  std::set<std::pair<long long, long long>> seen;
  for (long long a = -9; a <= 9; ++a)
    for (long long b = -9; b <= 9; ++b) {
      auto x = el(a, b);
      if (k.norm(x) == 0) continue;
      auto r = red.reduce(x);
      EXPECT_TRUE(red.in_domain(r));
      EXPECT_EQ(red.reduce(r), r);
      EXPECT_EQ(red.reduce(k.mul(x, red.unit())), r);
      EXPECT_EQ(abs(k.norm(r)), abs(k.norm(x)));
      EXPECT_TRUE(covered_by_cones(k, dec, red, r));
    }
}

TEST(Cones, RealQuadraticCountMatchesBruteForce) {
  const auto& k = K();
  auto P = P7();
  DomainReducer red(k);
  double x = 500;
  auto pc = count_progression(k, k.from_int(1), P, 7, 1, x, true);
  EXPECT_EQ(count_progression(k, k.from_int(1), P, 7, 1, x, false, 2.0).count, pc.count);
  // brute force over a + b sqrt2 in a box containing the domain at this height
  long long ref = 0;
  for (long long a = -400; a <= 400; ++a)
    for (long long b = -300; b <= 300; ++b) {
      auto beta = el(a, b);
      Rat N = abs(k.norm(beta));
      if (N == 0 || N > Rat(500)) continue;
      if (!red.in_domain(beta)) continue;
      if (k.ideal_contains(P, k.add(beta, k.from_int(-1)))) ++ref;
    }
  EXPECT_EQ(pc.count, ref);
  EXPECT_GT(pc.count, 0);
  long long prev = 0;
  for (double y : {50.0, 100.0, 200.0, 400.0, 800.0}) {
    auto c = count_progression(k, k.from_int(1), P, 7, 1, y).count;
    EXPECT_GE(c, prev);
    prev = c;
  }
}

TEST(Cones, UnsupportedFieldsAreRejected) {
  auto gi = nlohmann::json::parse(R"J({"label": "Q(i)", "min_poly": ["1", "0", "1"],
    "integral_basis": [["1", "0"], ["0", "1"]], "discriminant": "-4", "class_number": 1,
    "class_reps": [[["1", "0"], ["0", "1"]]], "unit_gens": [["0", "1"]], "different_gen": ["2", "0"]})J");
  NumberFieldData k;
  try {
    k = nf_load(gi);
  } catch (const InputError& e) {
    GTEST_SKIP() << "loader rejects the Gaussian field document: " << e.what();
  }
  EXPECT_THROW(DomainReducer{k}, Unsupported);
  EXPECT_THROW(build_cones(k), Unsupported);
}
