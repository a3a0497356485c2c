#ifndef LAV_CYCLOTOMIC_HPP
#define LAV_CYCLOTOMIC_HPP

// Exact roots of unity and elements of Q(zeta_N) in the power basis
// 1, zeta, ..., zeta^{phi(N)-1}.

#include "lav/numeric.hpp"

#include <map>
#include <mutex>

namespace lav {

/// e(num/den) with 0 <= num < den and gcd(num, den) = 1 (den = 1 for the value 1).
struct ExactRootOfUnity {
  long long num = 0;
  long long den = 1;

  static ExactRootOfUnity make(long long n, long long d) {
    n = mod(n, d);
    long long g = std::gcd(n, d);
    if (g == 0) g = d;
    return {n / g, d / g};
  }

  ExactRootOfUnity operator*(const ExactRootOfUnity& o) const {
    long long l = std::lcm(den, o.den);
    return make(num * (l / den) + o.num * (l / o.den), l);
  }

  ExactRootOfUnity conj() const { return make(-num, den); }
  ExactRootOfUnity pow(long long t) const { return make(mulmod(mod(t, den), num, den), den); }
  long long order() const { return den; }
  Rat phase() const { return make_rat(num, den); }
  cplx value() const { return expi_rat(phase()); }
  bool operator==(const ExactRootOfUnity&) const = default;
};

namespace detail {

/// Cyclotomic polynomial Phi_n, integer coefficients low to high.
inline const std::vector<long long>& cyclotomic_poly(long long n) {
  static std::map<long long, std::vector<long long>> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by Phi_d for every proper divisor d
  std::vector<long long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (long long d = 1; d < n; ++d) {
    if (n % d) continue;
    std::vector<long long> div = cyclotomic_poly(d);
    size_t dd = div.size() - 1;
    std::vector<long long> q(num.size() - dd, 0);
    for (size_t i = num.size() - 1; i >= dd; --i) {
      long long c = num[i];
      q[i - dd] = c;
      if (c != 0)
        for (size_t k = 0; k <= dd; ++k) num[i - dd + k] -= c * div[k];
      if (i == dd) break;
    }
    num = q;
  }
  return cache.emplace(n, num).first->second;
}

}  // namespace detail

/// Element of Q(zeta_N), stored in the power basis of length phi(N).
class Cyclotomic {
 public:
  Cyclotomic() : n_(1), c_(1, Rat(0)) {}
  explicit Cyclotomic(long long n) : n_(n), c_(static_cast<size_t>(euler_phi(n)), Rat(0)) {}

  static Cyclotomic rational(long long n, const Rat& q) {
    Cyclotomic z(n);
    z.c_[0] = q;
    return z;
  }

  /// zeta_N^e, reduced into the power basis.
  static Cyclotomic root(long long n, long long e) {
    Cyclotomic z(n);
    z.add_root(e, Rat(1));
    return z;
  }

  static Cyclotomic from(const ExactRootOfUnity& r, long long n) {
    if (n % r.den) throw std::domain_error("root of unity not in the cyclotomic field");
    return root(n, r.num * (n / r.den));
  }

  long long level() const { return n_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  /// this += q * zeta^e
  void add_root(long long e, const Rat& q) {
    e = mod(e, n_);
    size_t deg = c_.size();
    if (static_cast<size_t>(e) < deg) {
      c_[e] += q;
      return;
    }
    std::vector<Rat> tmp(static_cast<size_t>(e) + 1, Rat(0));
    tmp[e] = q;
    reduce_into(tmp);
  }

  /// Sum of q_e * zeta^e given as a dense exponent histogram of length N.
  static Cyclotomic from_histogram(long long n, const std::vector<Rat>& h) {
    Cyclotomic z(n);
    std::vector<Rat> tmp = h;
    z.reduce_into(tmp);
    return z;
  }

  Cyclotomic operator+(const Cyclotomic& o) const {
    auto [a, b] = common(*this, o);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
  }

  Cyclotomic operator-(const Cyclotomic& o) const {
    auto [a, b] = common(*this, o);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
    return a;
  }

  Cyclotomic operator*(const Cyclotomic& o) const {
    auto [a, b] = common(*this, o);
    std::vector<Rat> prod(2 * a.c_.size(), Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (size_t j = 0; j < b.c_.size(); ++j)
        if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
    }
    Cyclotomic r(a.n_);
    r.reduce_into(prod);
    return r;
  }

  Cyclotomic scaled(const Rat& q) const {
    Cyclotomic r = *this;
    for (auto& v : r.c_) v *= q;
    return r;
  }

  /// Multiplication by zeta_N^e.
  Cyclotomic times_root(long long e) const {
    std::vector<Rat> tmp(c_.size() + static_cast<size_t>(mod(e, n_)), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) tmp[i + static_cast<size_t>(mod(e, n_))] = c_[i];
    Cyclotomic r(n_);
    r.reduce_into(tmp);
    return r;
  }

  /// Complex conjugation zeta -> zeta^{-1}.
  Cyclotomic conj() const {
    Cyclotomic r(n_);
    for (size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) r.add_root(-static_cast<long long>(i), c_[i]);
    return r;
  }

  /// Lift into Q(zeta_M) for a multiple M of N.
  Cyclotomic lift(long long m) const {
    if (m % n_) throw std::domain_error("cyclotomic lift to a non-multiple level");
    Cyclotomic r(m);
    for (size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) r.add_root(static_cast<long long>(i) * (m / n_), c_[i]);
    return r;
  }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  Rat rational_part() const { return c_[0]; }

  cplx value() const {
    cplx s = 0;
    for (size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) s += c_[i].convert_to<double>() * expi_rat(make_rat(static_cast<long long>(i), n_));
    return s;
  }

  bool operator==(const Cyclotomic& o) const {
    auto [a, b] = common(*this, o);
    return a.c_ == b.c_;
  }

 private:
  long long n_;
  std::vector<Rat> c_;

  static std::pair<Cyclotomic, Cyclotomic> common(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.n_ == b.n_) return {a, b};
    long long l = std::lcm(a.n_, b.n_);
    return {a.lift(l), b.lift(l)};
  }

  // Reduce a dense polynomial in zeta modulo Phi_N and add it to this.
  void reduce_into(std::vector<Rat>& p) {
    const auto& phi = detail::cyclotomic_poly(n_);
    size_t deg = phi.size() - 1;
    // first fold exponents mod N
    if (p.size() > static_cast<size_t>(n_)) {
      for (size_t i = static_cast<size_t>(n_); i < p.size(); ++i)
        if (p[i] != 0) p[i % n_] += p[i];
      p.resize(static_cast<size_t>(n_));
    }
    for (size_t i = p.size(); i-- > deg;) {
      if (p[i] == 0) continue;
      Rat q = p[i];
      for (size_t k = 0; k <= deg; ++k)
        if (phi[k] != 0) p[i - deg + k] -= q * Rat(phi[k]);
    }
    for (size_t i = 0; i < deg && i < p.size(); ++i) c_[i] += p[i];
  }
};

}  // namespace lav

#endif  // LAV_CYCLOTOMIC_HPP
