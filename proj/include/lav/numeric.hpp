#ifndef LAV_NUMERIC_HPP
#define LAV_NUMERIC_HPP

// Integer and modular helpers shared by every module.

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace lav {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Thrown when an input document or argument violates a documented precondition.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a requested computation is outside what the library supports.
struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a numerical self-check fails (quadrature, tolerance, cross-check).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rat make_rat(long long num, long long den = 1) { return Rat(Int(num), Int(den)); }

inline Rat parse_rat(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw InputError("malformed rational '" + s + "'");
  }
}

inline std::string to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline long long to_ll(const Int& z) {
  if (z > Int(std::numeric_limits<long long>::max()) || z < Int(std::numeric_limits<long long>::min()))
    throw NumericalError("integer does not fit in 64 bits: " + z.str());
  return z.convert_to<long long>();
}

/// Floor of a rational.
inline Int floor_rat(const Rat& r) {
  Int q = numerator(r) / denominator(r);
  if (numerator(r) < 0 && q * denominator(r) != numerator(r)) q -= 1;
  return q;
}

/// Fractional part in [0, 1).
inline Rat frac(const Rat& r) { return r - Rat(floor_rat(r)); }

inline long long mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

inline Int mod(const Int& a, const Int& m) {
  Int r = a % m;
  return r < 0 ? Int(r + m) : r;
}

inline long long mulmod(long long a, long long b, long long m) {
  return static_cast<long long>((static_cast<__int128>(a) * b) % m);
}

inline long long powmod(long long b, long long e, long long m) {
  long long r = 1 % m;
  b = mod(b, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

/// Extended gcd: returns g and sets x, y with a*x + b*y = g.
inline long long ext_gcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = (a >= 0) ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  long long x1 = 0, y1 = 0;
  long long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline long long invmod(long long a, long long m) {
  long long x = 0, y = 0;
  if (ext_gcd(mod(a, m), m, x, y) != 1) throw std::domain_error("not invertible mod " + std::to_string(m));
  return mod(x, m);
}

inline Int invmod(const Int& a, const Int& m) {
  Int old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    Int t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw std::domain_error("not invertible mod " + m.str());
  return mod(old_s, m);
}

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<long long> prime_factors(long long n) {
  std::vector<long long> out;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// p-adic valuation of a nonzero integer.
inline int valuation(long long n, long long p) {
  if (n == 0) return 1 << 20;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline long long euler_phi(long long n) {
  long long r = n;
  for (long long q : prime_factors(n)) r = r / q * (q - 1);
  return r;
}

/// Multiplicative order of a modulo m (gcd(a, m) = 1), given the group order.
inline long long mult_order(long long a, long long m, long long group_order) {
  long long ord = group_order;
  for (long long q : prime_factors(group_order)) {
    while (ord % q == 0 && powmod(a, ord / q, m) == 1) ord /= q;
  }
  return ord;
}

/// Smallest generator of (Z/p^n)^x for an odd prime p.
inline long long primitive_root_prime_power(long long p, int n) {
  long long pn = ipow(p, n), phi = pn / p * (p - 1);
  for (long long g = 2; g < pn; ++g) {
    if (g % p == 0) continue;
    if (mult_order(g, pn, phi) == phi) return g;
  }
  return 1;  // only reached for the trivial group
}

/// Discrete logarithm of h to base g in a cyclic group of the given order
/// modulo m, via baby-step giant-step.
inline long long discrete_log(long long g, long long h, long long m, long long order) {
  if (order <= 1) return 0;
  auto step = static_cast<long long>(std::ceil(std::sqrt(static_cast<double>(order))));
  std::unordered_map<long long, long long> baby;
  baby.reserve(static_cast<size_t>(step) * 2);
  long long cur = 1;
  for (long long j = 0; j < step; ++j) {
    baby.emplace(cur, j);
    cur = mulmod(cur, g, m);
  }
  long long giant = invmod(powmod(g, step, m), m);
  cur = mod(h, m);
  for (long long i = 0; i <= step; ++i) {
    auto it = baby.find(cur);
    if (it != baby.end()) return mod(i * step + it->second, order);
    cur = mulmod(cur, giant, m);
  }
  throw std::domain_error("discrete log does not exist");
}

/// e(x) = exp(2 pi i x) for an exact rational phase; reduced mod 1 first.
inline cplx expi_rat(const Rat& phase) {
  Rat f = frac(phase);
  double x = f.convert_to<double>();
  return {std::cos(kTwoPi * x), std::sin(kTwoPi * x)};
}

}  // namespace lav

#endif  // LAV_NUMERIC_HPP
