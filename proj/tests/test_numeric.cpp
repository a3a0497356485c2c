#include "lav/numeric.hpp"

#include <gtest/gtest.h>

using namespace lav;

TEST(Numeric, ModularArithmeticAgainstLoops) {
  for (long long m : {7LL, 25LL, 343LL, 1000003LL})
    for (long long a = -20; a <= 20; ++a) {
      long long r = mod(a, m);
      EXPECT_GE(r, 0);
      EXPECT_EQ((a - r) % m, 0);
      long long acc = 1;
      for (int e = 0; e < 12; ++e) {
        EXPECT_EQ(powmod(mod(a, m), e, m), acc);
        acc = acc * mod(a, m) % m;
      }
      if (std::gcd(r, m) == 1) EXPECT_EQ(mulmod(invmod(r, m), r, m), 1 % m);
    }
}

TEST(Numeric, PrimalityMatchesSieve) {
  std::vector<bool> comp(5000, false);
  for (int i = 2; i < 5000; ++i)
    if (!comp[i])
      for (int j = 2 * i; j < 5000; j += i) comp[j] = true;
  for (int n = 0; n < 5000; ++n) EXPECT_EQ(is_prime(n), n >= 2 && !comp[n]) << n;
}

TEST(Numeric, EulerPhiCountsUnits) {
  for (long long n = 1; n <= 400; ++n) {
    long long c = 0;
    for (long long k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
    EXPECT_EQ(euler_phi(n), c) << n;
  }
}

TEST(Numeric, PrimitiveRootsAndLogs) {
  for (long long p : {3LL, 5LL, 7LL, 11LL})
    for (int n = 1; n <= 3; ++n) {
      long long q = ipow(p, n), ph = q / p * (p - 1);
      long long g = primitive_root_prime_power(p, n);
      EXPECT_EQ(mult_order(g, q, ph), ph);
      long long x = 1;
      for (long long k = 0; k < ph; ++k) {
        EXPECT_EQ(discrete_log(g, x, q, ph), k);
        x = mulmod(x, g, q);
      }
    }
}

TEST(Numeric, Rationals) {
  EXPECT_EQ(to_string(parse_rat("-6/4")), "-3/2");
  EXPECT_EQ(floor_rat(parse_rat("-3/2")), Int(-2));
  EXPECT_EQ(frac(parse_rat("-3/2")), make_rat(1, 2));
  EXPECT_THROW(parse_rat("x/2"), InputError);
  EXPECT_THROW(to_ll(Int(1) << 70), NumericalError);
  EXPECT_NEAR(std::abs(expi_rat(make_rat(1, 4)) - cplx(0, 1)), 0, 1e-15);
}
