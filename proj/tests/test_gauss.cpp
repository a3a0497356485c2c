#include "lav/gauss.hpp"

#include <gtest/gtest.h>

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

cplx e(double x) { return std::polar(1.0, kTwoPi * x); }

/// Character values of phi on (Z/q)^x by walking powers of the root.
std::vector<cplx> values(const LocalCharacter& phi) {
  std::vector<cplx> v(static_cast<size_t>(phi.modulus), 0.0);
  long long x = 1;
  for (long long k = 0; k < phi.phi; ++k) {
    v[x] = e(static_cast<double>(mulmod(phi.j, k, phi.phi)) / static_cast<double>(phi.phi));
    x = mulmod(x, phi.root, phi.modulus);
  }
  return v;
}

}  // namespace

TEST(Gauss, QuadraticGaussSumClosedForm) {
  for (long long p : {3LL, 5LL, 7LL, 11LL, 13LL}) {
    GaussContext ctx(Qf(), p, primes_above(Qf(), p)[0]);
    auto phi = LocalCharacter::make(p, 1, (p - 1) / 2);  // the Legendre symbol
    ASSERT_EQ(phi.order(), 2);
    auto g = ctx.gauss_sum(phi, 1, true);
    // sum (x/p) e(-x/p) = (-1/p) * sqrt(p^*), i.e. sqrt(p) or -i sqrt(p)
    cplx expect = p % 4 == 1 ? cplx(std::sqrt(p), 0) : cplx(0, -std::sqrt(p));
    EXPECT_NEAR(std::abs(g.value - expect), 0, 1e-10) << p;
    EXPECT_NEAR(std::abs(ctx.gauss_sum(phi, 1, false).value - expect), 0, 1e-10);
  }
}

TEST(Gauss, RationalSumsMatchDirectSummation) {
  for (long long p : {3LL, 5LL})
    for (int c = 1; c <= 3; ++c) {
      GaussContext ctx(Qf(), p, primes_above(Qf(), p)[0]);
      for (const auto& phi : local_characters(p, c)) {
        auto v = values(phi);
        for (long long a : {1LL, 2LL, 4LL}) {
          cplx ref = 0;
          for (long long x = 1; x < phi.modulus; ++x)
            ref += v[x] * e(-static_cast<double>(mod(a * x, phi.modulus)) / static_cast<double>(phi.modulus));
          EXPECT_NEAR(std::abs(ctx.gauss_sum(phi, a, false).value - ref), 0, 1e-9);
        }
        // W = phi(-1) G(conj phi)^2 / q with the direct sum
        cplx gc = 0;
        auto vc = values(phi.conj());
        for (long long x = 1; x < phi.modulus; ++x)
          gc += vc[x] * e(-static_cast<double>(x) / static_cast<double>(phi.modulus));
        cplx w = v[phi.modulus - 1] * gc * gc / static_cast<double>(phi.modulus);
        EXPECT_NEAR(std::abs(root_number_W(ctx, phi) - w), 0, 1e-9);
      }
    }
}

TEST(Gauss, RealQuadraticSumThroughGlobalIdempotents) {
  const auto& k = K();
  for (const auto& P : primes_above(k, 7))
    for (int c = 1; c <= 2; ++c) {
      GaussContext ctx(k, 7, P);
      auto iso = split_local_iso(k, 7, P, c);
      for (const auto& phi : local_characters(7, c)) {
        // phi_p(delta) * sum phi(x) e(-{Tr(e x / 7^c)}) with the trace taken in the field
        auto v = values(phi);
        cplx ref = 0;
        for (long long x = 1; x < phi.modulus; ++x)
          if (x % 7) ref += v[x] * expi_rat(ctx.efin_phase_of(c, x));
        ref *= v[iso.reduce(k.different_gen)];
        auto g = ctx.gauss_sum(phi, 1, false).value;
        EXPECT_NEAR(std::abs(g - ref), 0, 1e-9);
        EXPECT_NEAR(std::norm(g), static_cast<double>(phi.modulus), 1e-9);
      }
    }
}

TEST(Gauss, ExactAndComplexModesAgree) {
  GaussContext ctx(Qf(), 7, primes_above(Qf(), 7)[0]);
  for (const auto& phi : local_characters(7, 2)) {
    auto a = ctx.gauss_sum(phi, 3, true), b = ctx.gauss_sum(phi, 3, false);
    EXPECT_NEAR(std::abs(a.exact.value() - b.value), 0, 1e-10);
  }
}

TEST(Gauss, GaloisExponents) {
  EXPECT_EQ(galois_exponents(5, 1, 0), (std::vector<long long>{1}));
  EXPECT_EQ(galois_exponents(5, 25, 0).size(), 20u);
  EXPECT_EQ(galois_exponents(5, 25, 1), (std::vector<long long>{1, 6, 11, 16, 21}));
  EXPECT_EQ(galois_exponents(5, 5, 1), (std::vector<long long>{1}));
  EXPECT_THROW(galois_exponents(5, 10, 0), InputError);
}

TEST(Gauss, OrbitAverageIsARamanujanSum) {
  // mean of zeta_{p^e}^{t k} over t in (Z/p^e)^x = c_{p^e}(k) / phi(p^e)
  auto P = primes_above(Qf(), 5)[0];
  auto g = rcg_build(Qf(), 5, P, 3);
  for (const auto& chi : char_enumerate(g, 3, true)) {
    for (long long x = 1; x < 125; ++x) {
      if (x % 5 == 0) continue;
      // the value has order 1, p or p^2 or more: mean 1, -1/(p-1) or 0
      auto v = *chi.eval_residue(x);
      double ref = v.order() == 1 ? 1.0 : v.order() == 5 ? -0.25 : 0.0;
      auto av = average_char_residue(chi, 0, x);
      EXPECT_NEAR(std::abs(av.value - ref), 0, 1e-12);
      EXPECT_EQ(av.exact.is_zero(), ref == 0);
      EXPECT_TRUE(av.exact.is_rational());
    }
    break;
  }
}

TEST(Gauss, OrbitIsClosedUnderItsOwnElements) {
  auto P = primes_above(Qf(), 5)[0];
  auto g = rcg_build(Qf(), 5, P, 3);
  auto chi = char_enumerate(g, 3, true).front();
  auto orbit = galois_orbit(chi, 0);
  EXPECT_EQ(orbit.size(), 20u);
  for (const auto& psi : orbit) {
    auto o2 = galois_orbit(psi, 0);
    for (const auto& x : o2) EXPECT_NE(std::find(orbit.begin(), orbit.end(), x), orbit.end());
  }
  GaussContext ctx(Qf(), 5, P);
  auto ws = orbit_root_numbers(ctx, chi, 0);
  for (auto w : ws) EXPECT_NEAR(std::abs(w), 1, 1e-12);
}

TEST(Gauss, KloostermanConstantsAreBounded) {
  auto P = primes_above(Qf(), 5)[0];
  auto rep = kloosterman_bound_report(Qf(), 5, P, 0, {1, 2});
  ASSERT_EQ(rep.rows.size(), 2u);
  for (const auto& r : rep.rows) {
    EXPECT_EQ(r.conductor, r.n + 1);
    EXPECT_LE(r.max_abs, 1.0 + 1e-12);
  }
  EXPECT_TRUE(rep.stable);
}
