#ifndef LAV_RAYCLASS_HPP
#define LAV_RAYCLASS_HPP

// Ray class groups Cl(F, p^n) for a degree-one prime p, carried in Smith
// normal form, with the prime-to-p / p-part split and the Hecke characters
// of the group.

#include "lav/cyclotomic.hpp"
#include "lav/linalg.hpp"
#include "lav/nf.hpp"

#include <memory>

namespace lav {

/// Z^g / (row span of the relation matrix), presented through its SNF.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;

  FiniteAbelianGroup(std::vector<std::string> labels, Matrix<Int> relations)
      : labels_(std::move(labels)), relations_(std::move(relations)) {
    size_t g = labels_.size();
    if (relations_.empty()) throw InputError("finite abelian group needs relations");
    snf_ = smith(relations_);
    for (size_t i = 0; i < g; ++i) {
      Int d = i < snf_.diagonal.size() ? snf_.diagonal[i] : Int(0);
      if (d == 0) throw InputError("relation matrix does not define a finite group");
      if (d != 1) {
        factor_col_.push_back(i);
        factors_.push_back(to_ll(d));
      }
    }
  }

  const std::vector<long long>& invariants() const { return factors_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const SmithForm& snf() const { return snf_; }

  long long order() const {
    long long o = 1;
    for (long long d : factors_) o *= d;
    return o;
  }

  long long exponent() const {
    long long e = 1;
    for (long long d : factors_) e = std::lcm(e, d);
    return e;
  }

  using Elem = std::vector<long long>;

  /// Canonical SNF coordinates of the class of sum x_i * gen_i.
  Elem from_generators(const std::vector<Int>& x) const {
    Elem out;
    for (size_t k = 0; k < factor_col_.size(); ++k) {
      Int acc = 0;
      for (size_t i = 0; i < x.size(); ++i) acc += x[i] * snf_.V[i][factor_col_[k]];
      out.push_back(to_ll(mod(acc, Int(factors_[k]))));
    }
    return out;
  }

  Elem identity() const { return Elem(factors_.size(), 0); }

  Elem add(const Elem& a, const Elem& b) const {
    Elem c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = mod(a[i] + b[i], factors_[i]);
    return c;
  }

  Elem scale(const Elem& a, long long t) const {
    Elem c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = mulmod(mod(t, factors_[i]), a[i], factors_[i]);
    return c;
  }

  long long element_order(const Elem& a) const {
    long long o = 1;
    for (size_t i = 0; i < a.size(); ++i) o = std::lcm(o, factors_[i] / std::gcd(a[i], factors_[i]));
    return o;
  }

  /// All elements in lexicographic order of coordinates.
  std::vector<Elem> elements() const {
    std::vector<Elem> out{identity()};
    for (size_t i = 0; i < factors_.size(); ++i) {
      std::vector<Elem> next;
      for (const auto& e : out)
        for (long long v = 0; v < factors_[i]; ++v) {
          Elem f = e;
          f[i] = v;
          next.push_back(f);
        }
      out = std::move(next);
    }
    return out;
  }

 private:
  std::vector<std::string> labels_;
  Matrix<Int> relations_;
  SmithForm snf_;
  std::vector<size_t> factor_col_;
  std::vector<long long> factors_;
};

using RayClassElement = FiniteAbelianGroup::Elem;

/// Cl(F, p^n) for a prime of degree one over an odd p, with h_F = 1.
struct RayClassGroup {
  const NumberFieldData* nf = nullptr;
  long long p = 0;
  int n = 0;
  long long modulus = 1;  // p^n
  long long phi = 1;      // |(O/p^n)^x|
  long long root = 1;     // generator of (Z/p^n)^x
  IntegralIdeal prime;
  LocalIso iso;
  FiniteAbelianGroup group;
  std::vector<long long> unit_logs;

  // decomposition
  std::vector<RayClassElement> delta;     // prime-to-p part
  std::vector<RayClassElement> w;         // image of the Teichmueller lifts
  long long gamma_section = 1;            // smallest a = 1 mod p generating the p-part
  RayClassElement gamma_gen;
  long long gamma_order = 1;
  std::vector<RayClassElement> filtration;  // filtration[j] = class of 1 + p^j, j = 0..n

  long long order() const { return group.order(); }

  /// Class of a residue x in (Z/p^n)^x.
  RayClassElement residue_class(long long x) const {
    x = mod(x, modulus);
    if (x % p == 0) throw std::domain_error("residue not coprime to p");
    if (n == 0) return group.identity();
    return group.from_generators({Int(discrete_log(root, x, modulus, phi))});
  }

  /// Class of the principal ideal (gamma), gamma a p-integral element prime to the prime.
  RayClassElement ideal_to_element(const FieldElement& gamma) const {
    if (n == 0) return group.identity();
    long long r = iso.reduce(gamma);
    if (r % p == 0) throw InputError("ideal is not coprime to the modulus");
    return residue_class(r);
  }

  /// Class of gamma * a_i; with h_F = 1 only i = 0 (the unit ideal) exists.
  RayClassElement ideal_to_element(const FieldElement& gamma, size_t class_rep) const {
    if (class_rep != 0) throw Unsupported("class groups with h_F > 1 are not supported");
    return ideal_to_element(gamma);
  }

  bool is_p_power(long long m) const {
    while (m % p == 0) m /= p;
    return m == 1;
  }
};

/// Build Cl(F, prime^n). Requires h_F = 1, p odd, p not dividing D_F and N(prime) = p.
inline RayClassGroup rcg_build(const NumberFieldData& nf, long long p, const IntegralIdeal& prime, int n) {
  if (nf.class_number != 1) throw Unsupported("ray class groups need h_F = 1 at desk scale");
  if (n < 0) throw InputError("ray class level must be >= 0");
  RayClassGroup g;
  g.nf = &nf;
  g.p = p;
  g.n = n;
  g.prime = prime;
  g.iso = split_local_iso(nf, p, prime, std::max(n, 1));
  g.modulus = ipow(p, n);
  if (n == 0) {
    g.group = FiniteAbelianGroup({"g"}, {{Int(1)}});
    g.delta = {g.group.identity()};
    g.w = {g.group.identity()};
    g.gamma_gen = g.group.identity();
    g.filtration = {g.group.identity()};
    return g;
  }
  g.phi = g.modulus / p * (p - 1);
  g.root = primitive_root_prime_power(p, n);
  Matrix<Int> rel{{Int(g.phi)}};
  for (const auto& u : nf.unit_gens) {
    long long r = g.iso.reduce(u) % g.modulus;
    long long l = discrete_log(g.root, r, g.modulus, g.phi);
    g.unit_logs.push_back(l);
    rel.push_back({Int(l)});
  }
  g.group = FiniteAbelianGroup({"g"}, rel);

  const auto& G = g.group;
  for (const auto& e : G.elements()) {
    if (G.element_order(e) % p != 0) g.delta.push_back(e);
  }
  for (long long x = 1; x < g.modulus; ++x) {
    if (x % p == 0 || powmod(x, p - 1, g.modulus) != 1) continue;
    auto c = g.residue_class(x);
    if (std::find(g.w.begin(), g.w.end(), c) == g.w.end()) g.w.push_back(c);
  }
  std::sort(g.w.begin(), g.w.end());

  // p-part order
  g.gamma_order = 1;
  for (long long d : G.invariants()) {
    long long t = d;
    while (t % p == 0) {
      t /= p;
      g.gamma_order *= p;
    }
  }
  g.gamma_gen = G.identity();
  g.gamma_section = 1;
  if (g.gamma_order > 1) {
    for (long long a = 1 + p; a < g.modulus; a += p) {
      auto c = g.residue_class(a);
      if (G.element_order(c) == g.gamma_order) {
        g.gamma_section = a;
        g.gamma_gen = c;
        break;
      }
    }
  }
  for (int j = 0; j <= n; ++j) {
    long long a = mod(1 + ipow(p, j), g.modulus);
    if (j == 0) a = g.root;  // 1 + p^0 is not a unit; level 0 is the whole group
    g.filtration.push_back(g.residue_class(a));
  }
  return g;
}

/// Finite-order Hecke character of a ray class group: exponent vector c with
/// chi(y) = e(sum c_i y_i / d_i) on SNF coordinates y.
struct HeckeCharacter {
  const RayClassGroup* rcg = nullptr;
  std::vector<long long> exps;
  long long order = 1;
  int conductor = 0;  // exponent c of the conductor prime^c

  ExactRootOfUnity eval(const RayClassElement& y) const {
    const auto& f = rcg->group.invariants();
    long long l = std::max<long long>(1, rcg->group.exponent());
    long long num = 0;
    for (size_t i = 0; i < f.size(); ++i) num = mod(num + mulmod(exps[i] * (l / f[i]) % l, y[i], l), l);
    return ExactRootOfUnity::make(num, l);
  }

  /// chi((x)) for a residue x mod p^n; nullopt when p | x.
  std::optional<ExactRootOfUnity> eval_residue(long long x) const {
    if (mod(x, rcg->p) == 0) return std::nullopt;
    return eval(rcg->residue_class(x));
  }

  /// chi((gamma)); nullopt when gamma lies in the prime.
  std::optional<ExactRootOfUnity> eval_ideal(const FieldElement& gamma) const {
    if (rcg->n == 0) return ExactRootOfUnity{};
    long long r = rcg->iso.reduce(gamma);
    if (r % rcg->p == 0) return std::nullopt;
    return eval(rcg->residue_class(r));
  }

  HeckeCharacter pow(long long t) const {
    HeckeCharacter c = *this;
    const auto& f = rcg->group.invariants();
    for (size_t i = 0; i < f.size(); ++i) c.exps[i] = mulmod(mod(t, f[i]), exps[i], f[i]);
    c.finish();
    return c;
  }

  HeckeCharacter conj() const { return pow(-1); }

  bool is_trivial() const { return order == 1; }

  std::string label() const {
    std::string s = "chi[";
    for (size_t i = 0; i < exps.size(); ++i) s += (i ? "," : "") + std::to_string(exps[i]);
    return s + "]@" + std::to_string(rcg->p) + "^" + std::to_string(rcg->n);
  }

  void finish() {
    const auto& f = rcg->group.invariants();
    order = 1;
    for (size_t i = 0; i < f.size(); ++i) order = std::lcm(order, f[i] / std::gcd(exps[i], f[i]));
    conductor = 0;
    if (order == 1) return;
    conductor = rcg->n;
    for (int m = 1; m <= rcg->n; ++m)
      if (eval(rcg->filtration[m]).num == 0) {
        conductor = m;
        break;
      }
  }

  bool operator==(const HeckeCharacter& o) const { return exps == o.exps && rcg == o.rcg; }
};

inline HeckeCharacter make_character(const RayClassGroup& g, std::vector<long long> exps) {
  HeckeCharacter c;
  c.rcg = &g;
  const auto& f = g.group.invariants();
  if (exps.size() != f.size()) throw InputError("character exponent vector has wrong length");
  for (size_t i = 0; i < f.size(); ++i) exps[i] = mod(exps[i], f[i]);
  c.exps = std::move(exps);
  c.finish();
  return c;
}

inline HeckeCharacter trivial_character(const RayClassGroup& g) {
  return make_character(g, std::vector<long long>(g.group.invariants().size(), 0));
}

/// Characters with conductor exactly prime^c, in increasing exponent-vector order.
inline std::vector<HeckeCharacter> char_enumerate(const RayClassGroup& g, int c, bool p_power_only) {
  if (c > g.n) throw InputError("conductor exponent exceeds the ray class level");
  std::vector<HeckeCharacter> out;
  for (const auto& e : g.group.elements()) {
    auto chi = make_character(g, e);
    if (chi.conductor != c) continue;
    if (p_power_only && !g.is_p_power(chi.order)) continue;
    out.push_back(chi);
  }
  return out;
}

}  // namespace lav

#endif  // LAV_RAYCLASS_HPP
