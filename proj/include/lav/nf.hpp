#ifndef LAV_NF_HPP
#define LAV_NF_HPP

// Exact arithmetic in a number field given by ingested field data:
// elements in an integral basis, ideals in Hermite normal form, the
// reduction O_F -> Z/p^m at a degree-one prime, and the finite-part
// additive character.

#include "lav/linalg.hpp"
#include "lav/numeric.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace lav {

// ---------------------------------------------------------------------------
// Rational polynomials (coefficients low to high).

namespace poly {

using Poly = std::vector<Rat>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

inline Poly rem(Poly a, const Poly& m) {
  trim(a);
  size_t dm = m.size() - 1;
  while (a.size() > dm) {
    Rat f = a.back() / m.back();
    size_t shift = a.size() - 1 - dm;
    for (size_t i = 0; i <= dm; ++i) a[shift + i] -= f * m[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline Poly derivative(const Poly& a) {
  Poly d;
  for (size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * Rat(static_cast<long long>(i)));
  trim(d);
  return d;
}

inline Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Value of an integer polynomial at x modulo m.
inline long long eval_mod(const std::vector<Int>& f, long long x, long long m) {
  long long r = 0;
  for (size_t i = f.size(); i-- > 0;) r = mod(mulmod(r, x, m) + to_ll(mod(f[i], Int(m))), m);
  return r;
}

}  // namespace poly

// ---------------------------------------------------------------------------

/// Element of F in coordinates with respect to the integral basis.
struct FieldElement {
  std::vector<Rat> coords;

  bool operator==(const FieldElement&) const = default;
};

/// Integral ideal as the row HNF of a Z-basis in integral-basis coordinates.
struct IntegralIdeal {
  Matrix<Int> hnf;
  Int norm;

  bool operator==(const IntegralIdeal& o) const { return hnf == o.hnf; }
};

struct NumberFieldData {
  std::string label;
  int degree = 0;
  int r1 = 0;
  int r2 = 0;
  std::vector<Int> min_poly;        // monic, low to high
  Matrix<Rat> integral_basis;       // row i: omega_i in the power basis
  Matrix<Rat> power_to_basis;       // inverse of integral_basis
  std::vector<Matrix<Rat>> mult_table;  // omega_i * omega_j = sum_k T[i][j][k] omega_k
  Int discriminant;
  int class_number = 1;
  std::vector<IntegralIdeal> class_reps;
  std::vector<FieldElement> unit_gens;  // torsion generator first, then fundamental units
  FieldElement different_gen;
  int precision_bits = 128;
  /// Embeddings: real ones first, then complex ones in conjugate pairs (sigma, c.sigma).
  std::vector<std::complex<long double>> theta_images;
  Matrix<std::complex<long double>> basis_images;  // [embedding][basis index]

  // -- elements --------------------------------------------------------------

  FieldElement zero() const { return {std::vector<Rat>(degree, Rat(0))}; }

  FieldElement from_rational(const Rat& q) const {
    // 1 expressed in the integral basis
    std::vector<Rat> pw(degree, Rat(0));
    pw[0] = q;
    return from_power_basis(pw);
  }

  FieldElement from_int(long long n) const { return from_rational(Rat(n)); }

  FieldElement from_power_basis(const std::vector<Rat>& pw) const {
    FieldElement x = zero();
    for (int i = 0; i < degree; ++i) {
      if (i >= static_cast<int>(pw.size()) || pw[i] == 0) continue;
      for (int j = 0; j < degree; ++j) x.coords[j] += pw[i] * power_to_basis[i][j];
    }
    return x;
  }

  std::vector<Rat> to_power_basis(const FieldElement& x) const {
    std::vector<Rat> pw(degree, Rat(0));
    for (int i = 0; i < degree; ++i) {
      if (x.coords[i] == 0) continue;
      for (int j = 0; j < degree; ++j) pw[j] += x.coords[i] * integral_basis[i][j];
    }
    return pw;
  }

  FieldElement add(const FieldElement& a, const FieldElement& b) const {
    FieldElement c = a;
    for (int i = 0; i < degree; ++i) c.coords[i] += b.coords[i];
    return c;
  }

  FieldElement sub(const FieldElement& a, const FieldElement& b) const {
    FieldElement c = a;
    for (int i = 0; i < degree; ++i) c.coords[i] -= b.coords[i];
    return c;
  }

  FieldElement neg(const FieldElement& a) const {
    FieldElement c = a;
    for (auto& v : c.coords) v = -v;
    return c;
  }

  FieldElement scale(const FieldElement& a, const Rat& q) const {
    FieldElement c = a;
    for (auto& v : c.coords) v *= q;
    return c;
  }

  FieldElement mul(const FieldElement& a, const FieldElement& b) const {
    FieldElement c = zero();
    for (int i = 0; i < degree; ++i) {
      if (a.coords[i] == 0) continue;
      for (int j = 0; j < degree; ++j) {
        if (b.coords[j] == 0) continue;
        Rat ab = a.coords[i] * b.coords[j];
        const auto& t = mult_table[i][j];
        for (int k = 0; k < degree; ++k)
          if (t[k] != 0) c.coords[k] += ab * t[k];
      }
    }
    return c;
  }

  FieldElement pow(FieldElement a, long long e) const {
    if (e < 0) {
      a = inverse(a);
      e = -e;
    }
    FieldElement r = from_int(1);
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// Matrix of multiplication by x: column j holds x * omega_j.
  Matrix<Rat> mult_matrix(const FieldElement& x) const {
    auto m = zeros<Rat>(degree, degree);
    for (int i = 0; i < degree; ++i) {
      if (x.coords[i] == 0) continue;
      for (int j = 0; j < degree; ++j)
        for (int k = 0; k < degree; ++k) m[k][j] += x.coords[i] * mult_table[i][j][k];
    }
    return m;
  }

  Rat norm(const FieldElement& x) const { return det(mult_matrix(x)); }

  Rat trace(const FieldElement& x) const {
    auto m = mult_matrix(x);
    Rat t = 0;
    for (int i = 0; i < degree; ++i) t += m[i][i];
    return t;
  }

  FieldElement inverse(const FieldElement& x) const {
    if (is_zero(x)) throw std::domain_error("inverse of zero field element");
    auto inv = lav::inverse(mult_matrix(x));
    FieldElement r = zero();
    // x^{-1} = M_x^{-1} applied to the coordinates of 1
    FieldElement one = from_int(1);
    for (int k = 0; k < degree; ++k)
      for (int j = 0; j < degree; ++j) r.coords[k] += inv[k][j] * one.coords[j];
    return r;
  }

  bool is_zero(const FieldElement& x) const {
    for (const auto& v : x.coords)
      if (v != 0) return false;
    return true;
  }

  bool is_integral(const FieldElement& x) const {
    for (const auto& v : x.coords)
      if (denominator(v) != 1) return false;
    return true;
  }

  bool is_unit(const FieldElement& x) const { return is_integral(x) && abs(norm(x)) == 1; }

  std::vector<std::complex<long double>> embed(const FieldElement& x) const {
    std::vector<std::complex<long double>> out(degree);
    for (int e = 0; e < degree; ++e) {
      std::complex<long double> s = 0;
      for (int i = 0; i < degree; ++i) s += static_cast<long double>(x.coords[i].convert_to<double>()) * basis_images[e][i];
      out[e] = s;
    }
    return out;
  }

  // -- ideals ----------------------------------------------------------------

  IntegralIdeal ideal(const std::vector<FieldElement>& gens) const {
    Matrix<Int> rows;
    for (const auto& g : gens) {
      if (!is_integral(g)) throw InputError("ideal generator is not integral");
      if (is_zero(g)) continue;
      for (int j = 0; j < degree; ++j) {
        FieldElement basis_j = zero();
        basis_j.coords[j] = 1;
        FieldElement prod = mul(g, basis_j);
        std::vector<Int> row;
        for (const auto& v : prod.coords) row.push_back(numerator(v));
        rows.push_back(std::move(row));
      }
    }
    if (rows.empty()) throw InputError("zero ideal");
    return from_hnf(hnf(rows));
  }

  IntegralIdeal principal(const FieldElement& g) const { return ideal({g}); }

  IntegralIdeal unit_ideal() const { return principal(from_int(1)); }

  IntegralIdeal from_hnf(Matrix<Int> h) const {
    Int n = 1;
    for (int i = 0; i < degree; ++i) n *= h[i][i];
    return {std::move(h), n};
  }

  Int ideal_norm(const IntegralIdeal& a) const { return a.norm; }

  IntegralIdeal ideal_mul(const IntegralIdeal& a, const IntegralIdeal& b) const {
    Matrix<Int> rows;
    for (const auto& ra : a.hnf)
      for (const auto& rb : b.hnf) {
        FieldElement x = zero(), y = zero();
        for (int i = 0; i < degree; ++i) {
          x.coords[i] = Rat(ra[i]);
          y.coords[i] = Rat(rb[i]);
        }
        FieldElement p = mul(x, y);
        std::vector<Int> row;
        for (const auto& v : p.coords) row.push_back(numerator(v));
        rows.push_back(std::move(row));
      }
    return from_hnf(hnf(rows));
  }

  IntegralIdeal ideal_pow(const IntegralIdeal& a, int e) const {
    IntegralIdeal r = unit_ideal();
    for (int i = 0; i < e; ++i) r = ideal_mul(r, a);
    return r;
  }

  bool ideal_contains(const IntegralIdeal& a, const FieldElement& x) const {
    if (!is_integral(x)) return false;
    std::vector<Int> v;
    for (const auto& c : x.coords) v.push_back(numerator(c));
    for (int j = 0; j < degree; ++j) {
      if (v[j] % a.hnf[j][j] != 0) return false;
      Int q = v[j] / a.hnf[j][j];
      for (int k = j; k < degree; ++k) v[k] -= q * a.hnf[j][k];
    }
    return true;
  }

  /// Z-basis of the ideal as field elements.
  std::vector<FieldElement> ideal_basis(const IntegralIdeal& a) const {
    std::vector<FieldElement> out;
    for (const auto& row : a.hnf) {
      FieldElement x = zero();
      for (int i = 0; i < degree; ++i) x.coords[i] = Rat(row[i]);
      out.push_back(std::move(x));
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Finite-part additive character.

/// Exact phase -{Tr(x)} of the finite-part additive character, in [0, 1).
inline Rat efin_phase(const NumberFieldData& nf, const FieldElement& x) { return frac(-nf.trace(x)); }

/// e(-{Tr_{F/Q}(x)}) for a global representative x.
inline cplx efin(const NumberFieldData& nf, const FieldElement& x) { return expi_rat(efin_phase(nf, x)); }

// ---------------------------------------------------------------------------
// Local identification O_F / p^m = Z / p^m at a degree-one prime.

struct LocalIso {
  long long p = 0;
  int level = 0;
  long long modulus = 1;  // p^level
  long long hensel_root = 0;
  IntegralIdeal prime;
  std::vector<long long> basis_residues;  // omega_i mod p^level

  long long reduce(const FieldElement& x) const {
    long long r = 0;
    for (size_t i = 0; i < basis_residues.size(); ++i) {
      const Rat& c = x.coords[i];
      if (c == 0) continue;
      Int den = denominator(c);
      if (den % p == 0) throw std::domain_error("element is not p-integral");
      long long num_r = to_ll(mod(numerator(c), Int(modulus)));
      long long den_inv = to_ll(invmod(mod(den, Int(modulus)), Int(modulus)));
      r = mod(r + mulmod(mulmod(num_r, den_inv, modulus), basis_residues[i], modulus), modulus);
    }
    return r;
  }
};

namespace detail {

inline std::vector<long long> roots_mod_p(const std::vector<Int>& f, long long p) {
  std::vector<long long> out;
  for (long long r = 0; r < p; ++r)
    if (poly::eval_mod(f, r, p) == 0) out.push_back(r);
  return out;
}

inline long long hensel_lift(const std::vector<Int>& f, long long r, long long p, int m) {
  std::vector<Int> df;
  for (size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * static_cast<long long>(i));
  long long pm = ipow(p, m);
  long long dfr = poly::eval_mod(df, r, p);
  if (dfr == 0) throw InputError("Hensel lift fails: root is not simple mod p");
  for (int it = 0; it < m + 1; ++it) {
    long long fr = poly::eval_mod(f, r, pm);
    if (fr == 0) break;
    long long d = poly::eval_mod(df, r, pm);
    r = mod(r - mulmod(fr, invmod(d, pm), pm), pm);
  }
  if (poly::eval_mod(f, r, pm) != 0) throw InputError("Hensel lift did not converge");
  return r;
}

inline std::vector<long long> basis_residues_at(const NumberFieldData& nf, long long root, long long pm, long long p) {
  std::vector<long long> out;
  for (int i = 0; i < nf.degree; ++i) {
    long long acc = 0, pw = 1 % pm;
    for (int k = 0; k < nf.degree; ++k) {
      const Rat& c = nf.integral_basis[i][k];
      if (c != 0) {
        if (denominator(c) % p == 0) throw InputError("integral basis has p in a denominator; index divisible by p");
        long long v = mulmod(to_ll(mod(numerator(c), Int(pm))), to_ll(invmod(mod(denominator(c), Int(pm)), Int(pm))), pm);
        acc = mod(acc + mulmod(v, pw, pm), pm);
      }
      pw = mulmod(pw, root, pm);
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace detail

/// True when p splits into [F:Q] distinct degree-one primes.
inline bool is_totally_split(const NumberFieldData& nf, long long p) {
  return static_cast<int>(detail::roots_mod_p(nf.min_poly, p).size()) == nf.degree && nf.discriminant % p != 0;
}

/// Local isomorphism O_F/prime^m = Z/p^m for a prime of a totally split p.
inline LocalIso split_local_iso(const NumberFieldData& nf, long long p, const IntegralIdeal& prime, int m) {
  if (p == 2 || !is_prime(p)) throw InputError("split_local_iso: p must be an odd prime");
  if (nf.discriminant % p == 0) throw InputError("split_local_iso: p divides the discriminant");
  if (prime.norm != p) throw InputError("split_local_iso: prime is not of degree one above p");
  auto roots = detail::roots_mod_p(nf.min_poly, p);
  if (static_cast<int>(roots.size()) != nf.degree) throw InputError("split_local_iso: p is not totally split");
  auto basis = nf.ideal_basis(prime);
  for (long long r : roots) {
    auto res = detail::basis_residues_at(nf, r, p, p);
    LocalIso probe{p, 1, p, r, prime, res};
    bool kills = true;
    for (const auto& b : basis)
      if (probe.reduce(b) != 0) {
        kills = false;
        break;
      }
    if (!kills) continue;
    long long pm = ipow(p, m);
    long long lifted = m == 0 ? 0 : detail::hensel_lift(nf.min_poly, r, p, m);
    return {p, m, pm, lifted, prime, detail::basis_residues_at(nf, lifted, pm, p)};
  }
  throw InputError("split_local_iso: no root of the minimal polynomial matches the prime");
}

/// All degree-one primes above a totally split p, as (p, theta - r) ideals,
/// ordered by the residue r of theta.
inline std::vector<IntegralIdeal> primes_above(const NumberFieldData& nf, long long p) {
  std::vector<IntegralIdeal> out;
  for (long long r : detail::roots_mod_p(nf.min_poly, p)) {
    std::vector<Rat> pw(nf.degree, Rat(0));
    if (nf.degree > 1) pw[1] = 1;
    pw[0] -= Rat(r);
    FieldElement t = nf.from_power_basis(pw);
    out.push_back(nf.ideal({nf.from_int(p), t}));
  }
  return out;
}

/// Element e of O_F with e = 1 mod prime^m and e = 0 mod every other prime
/// above p to the m-th power. Lagrange interpolation in Z[theta].
inline FieldElement local_idempotent(const NumberFieldData& nf, const LocalIso& iso) {
  long long pm = iso.modulus;
  auto roots_p = detail::roots_mod_p(nf.min_poly, iso.p);
  std::vector<long long> lifted;
  for (long long r : roots_p) lifted.push_back(iso.level == 0 ? 0 : detail::hensel_lift(nf.min_poly, r, iso.p, iso.level));
  poly::Poly num{Rat(1)};
  long long den = 1;
  for (long long r : lifted) {
    if (r == iso.hensel_root) continue;
    num = poly::mul(num, poly::Poly{Rat(-r), Rat(1)});
    den = mulmod(den, mod(iso.hensel_root - r, pm), pm);
  }
  long long den_inv = invmod(den, pm);
  std::vector<Rat> pw(nf.degree, Rat(0));
  for (size_t i = 0; i < num.size() && i < pw.size(); ++i) {
    long long c = to_ll(mod(numerator(num[i]), Int(pm)));
    pw[i] = Rat(mulmod(c, den_inv, pm));
  }
  return nf.from_power_basis(pw);
}

// ---------------------------------------------------------------------------
// Loading and validation.

namespace detail {

inline std::vector<Rat> rat_list(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected array");
  std::vector<Rat> out;
  for (const auto& v : j) {
    if (v.is_string()) out.push_back(parse_rat(v.get<std::string>()));
    else if (v.is_number_integer()) out.push_back(Rat(v.get<long long>()));
    else throw InputError(what + ": entries must be integer strings or rationals");
  }
  return out;
}

struct MpComplex {
  using R = boost::multiprecision::mpfr_float;
  R re, im;
  MpComplex operator+(const MpComplex& o) const { return {re + o.re, im + o.im}; }
  MpComplex operator-(const MpComplex& o) const { return {re - o.re, im - o.im}; }
  MpComplex operator*(const MpComplex& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  MpComplex operator/(const MpComplex& o) const {
    R d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  R abs() const { return boost::multiprecision::sqrt(re * re + im * im); }
};

/// Complex roots of a monic integer polynomial by Durand-Kerner at the given precision.
inline std::vector<MpComplex> poly_roots(const std::vector<Int>& f, int bits) {
  using R = MpComplex::R;
  unsigned digits10 = static_cast<unsigned>(bits * 0.30103) + 5;
  R::default_precision(digits10);
  int d = static_cast<int>(f.size()) - 1;
  std::vector<MpComplex> z(d);
  MpComplex seed{R("0.4"), R("0.9")};
  MpComplex cur{R(1), R(0)};
  for (int i = 0; i < d; ++i) {
    z[i] = cur;
    cur = cur * seed;
  }
  auto eval = [&](const MpComplex& x) {
    MpComplex acc{R(0), R(0)};
    for (int i = d; i >= 0; --i) acc = acc * x + MpComplex{R(f[i].str()), R(0)};
    return acc;
  };
  R tol = boost::multiprecision::pow(R(2), -bits + 8);
  for (int it = 0; it < 2000; ++it) {
    R delta = 0;
    for (int i = 0; i < d; ++i) {
      MpComplex den{R(1), R(0)};
      for (int j = 0; j < d; ++j)
        if (j != i) den = den * (z[i] - z[j]);
      MpComplex step = eval(z[i]) / den;
      z[i] = z[i] - step;
      delta = std::max(delta, step.abs());
    }
    if (delta < tol) break;
  }
  return z;
}

}  // namespace detail

inline FieldElement element_from_json(const NumberFieldData& nf, const nlohmann::json& j, const std::string& what) {
  auto c = detail::rat_list(j, what);
  if (static_cast<int>(c.size()) != nf.degree) throw InputError(what + ": wrong number of coordinates");
  return {c};
}

/// Build and validate field data from a parsed field-data document.
inline NumberFieldData nf_load(const nlohmann::json& doc, int precision_bits = 128) {
  NumberFieldData nf;
  try {
    nf.label = doc.value("label", std::string("F"));
    auto mp = detail::rat_list(doc.at("min_poly"), "min_poly");
    if (mp.size() < 2 || mp.back() != 1) throw InputError("min_poly must be monic of degree >= 1");
    for (const auto& c : mp) {
      if (denominator(c) != 1) throw InputError("min_poly must have integer coefficients");
      nf.min_poly.push_back(numerator(c));
    }
    nf.degree = static_cast<int>(mp.size()) - 1;
    const int d = nf.degree;

    auto g = poly::gcd(mp, poly::derivative(mp));
    if (g.size() > 1) throw InputError("invariant violation: min_poly is not squarefree");

    for (const auto& row : doc.at("integral_basis")) {
      auto r = detail::rat_list(row, "integral_basis");
      if (static_cast<int>(r.size()) != d) throw InputError("integral_basis row has wrong length");
      nf.integral_basis.push_back(r);
    }
    if (static_cast<int>(nf.integral_basis.size()) != d) throw InputError("integral_basis must have degree rows");
    nf.power_to_basis = inverse(nf.integral_basis);

    // multiplication table from the power basis
    nf.mult_table.assign(d, zeros<Rat>(d, d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        auto prod = poly::rem(poly::mul(nf.integral_basis[i], nf.integral_basis[j]), mp);
        prod.resize(d, Rat(0));
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) nf.mult_table[i][j][b] += prod[a] * nf.power_to_basis[a][b];
        for (int k = 0; k < d; ++k)
          if (denominator(nf.mult_table[i][j][k]) != 1)
            throw InputError("invariant violation: integral basis is not closed under multiplication");
      }
    if (doc.contains("mult_table")) {
      const auto& mt = doc.at("mult_table");
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if (detail::rat_list(mt.at(i).at(j), "mult_table") != nf.mult_table[i][j])
            throw InputError("invariant violation: mult_table disagrees with min_poly and integral_basis");
    }

    nf.discriminant = Int(doc.at("discriminant").get<std::string>());
    auto gram = zeros<Rat>(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        FieldElement ei = nf.zero(), ej = nf.zero();
        ei.coords[i] = 1;
        ej.coords[j] = 1;
        gram[i][j] = nf.trace(nf.mul(ei, ej));
      }
    if (det(gram) != Rat(nf.discriminant))
      throw InputError("invariant violation: discriminant " + nf.discriminant.str() + " != trace-form determinant " +
                       to_string(det(gram)));

    nf.class_number = doc.at("class_number").get<int>();
    if (nf.class_number < 1) throw InputError("class_number must be positive");
    for (const auto& rep : doc.at("class_reps")) {
      Matrix<Int> gens;
      for (const auto& row : rep) {
        std::vector<Int> r;
        for (const auto& v : detail::rat_list(row, "class_reps")) {
          if (denominator(v) != 1) throw InputError("class_reps entries must be integers");
          r.push_back(numerator(v));
        }
        gens.push_back(r);
      }
      nf.class_reps.push_back(nf.from_hnf(hnf(gens)));
    }
    if (static_cast<int>(nf.class_reps.size()) != nf.class_number)
      throw InputError("invariant violation: class_reps count differs from class_number");

    for (const auto& u : doc.at("unit_gens")) {
      auto x = element_from_json(nf, u, "unit_gens");
      if (!nf.is_unit(x)) throw InputError("invariant violation: unit generator with |N(u)| != 1");
      nf.unit_gens.push_back(x);
    }
    if (nf.unit_gens.empty()) throw InputError("unit_gens must contain at least the torsion generator");

    nf.different_gen = element_from_json(nf, doc.at("different_gen"), "different_gen");
    if (!nf.is_integral(nf.different_gen) || abs(nf.norm(nf.different_gen)) != Rat(abs(nf.discriminant)))
      throw InputError("invariant violation: |N(different_gen)| != |D_F|");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("field document parse error: ") + e.what());
  }

  // embeddings
  nf.precision_bits = precision_bits;
  auto roots = detail::poly_roots(nf.min_poly, precision_bits);
  using R = detail::MpComplex::R;
  R real_tol = boost::multiprecision::pow(R(2), -precision_bits / 2);
  std::vector<std::complex<long double>> reals, cpx;
  for (const auto& z : roots) {
    std::complex<long double> v{z.re.convert_to<long double>(), z.im.convert_to<long double>()};
    if (boost::multiprecision::abs(z.im) < real_tol) reals.push_back({v.real(), 0.0L});
    else if (z.im > 0) cpx.push_back(v);
  }
  std::sort(reals.begin(), reals.end(), [](auto a, auto b) { return a.real() < b.real(); });
  nf.r1 = static_cast<int>(reals.size());
  nf.r2 = static_cast<int>(cpx.size());
  if (nf.r1 + 2 * nf.r2 != nf.degree) throw InputError("invariant violation: r1 + 2 r2 != degree");
  if (doc.contains("signature")) {
    auto sig = doc.at("signature");
    if (sig.at(0).get<int>() != nf.r1 || sig.at(1).get<int>() != nf.r2)
      throw InputError("invariant violation: stated signature differs from real root count");
  }
  nf.theta_images = reals;
  for (auto z : cpx) {
    nf.theta_images.push_back(z);
    nf.theta_images.push_back(std::conj(z));
  }
  nf.basis_images.assign(nf.degree, std::vector<std::complex<long double>>(nf.degree));
  for (int e = 0; e < nf.degree; ++e)
    for (int i = 0; i < nf.degree; ++i) {
      std::complex<long double> s = 0, pw = 1;
      for (int k = 0; k < nf.degree; ++k) {
        s += static_cast<long double>(nf.integral_basis[i][k].convert_to<double>()) * pw;
        pw *= nf.theta_images[e];
      }
      nf.basis_images[e][i] = s;
    }
  return nf;
}

inline NumberFieldData nf_load_file(const std::string& path, int precision_bits = 128) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open field document " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("field document parse error: " + std::string(e.what()));
  }
  return nf_load(doc, precision_bits);
}

/// Built-in documents for Q and Q(sqrt 2).
inline nlohmann::json rationals_document() {
  return nlohmann::json::parse(R"J({
    "label": "Q", "min_poly": ["0", "1"], "integral_basis": [["1"]],
    "discriminant": "1", "class_number": 1, "class_reps": [[["1"]]],
    "unit_gens": [["-1"]], "different_gen": ["1"]})J");
}

inline nlohmann::json sqrt2_document() {
  return nlohmann::json::parse(R"J({
    "label": "Q(sqrt2)", "min_poly": ["-2", "0", "1"],
    "integral_basis": [["1", "0"], ["0", "1"]],
    "discriminant": "8", "class_number": 1, "class_reps": [[["1", "0"], ["0", "1"]]],
    "unit_gens": [["-1", "0"], ["1", "1"]], "different_gen": ["0", "2"]})J");
}

}  // namespace lav

#endif  // LAV_NF_HPP
