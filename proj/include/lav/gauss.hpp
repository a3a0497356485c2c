#ifndef LAV_GAUSS_HPP
#define LAV_GAUSS_HPP

// Gauss sums, root-number factors and Galois averages of p-power order
// characters.
//
// A ray class character chi of conductor p^c is handled through its local
// component phi_p on (O/p^c)^x = (Z/p^c)^x, phi_p(x) = conj(chi((x))).

#include "lav/cyclotomic.hpp"
#include "lav/rayclass.hpp"

namespace lav {

/// Character of (Z/p^c)^x: phi(root^k) = e(j k / phi(p^c)).
struct LocalCharacter {
  long long p = 0;
  int level = 0;
  long long modulus = 1;
  long long phi = 1;
  long long root = 1;
  long long j = 0;

  ExactRootOfUnity at(long long x) const {
    if (level == 0) return {};
    x = mod(x, modulus);
    if (x % p == 0) throw std::domain_error("local character evaluated at a non-unit");
    long long k = discrete_log(root, x, modulus, phi);
    return ExactRootOfUnity::make(mulmod(j, k, phi), phi);
  }

  long long order() const { return level == 0 ? 1 : phi / std::gcd(j, phi); }

  /// Smallest m with phi trivial on 1 + p^m (0 for the trivial character).
  int conductor() const {
    if (order() == 1) return 0;
    for (int m = 1; m < level; ++m)
      if (at(1 + ipow(p, m)).num == 0) return m;
    return level;
  }

  LocalCharacter conj() const {
    LocalCharacter c = *this;
    c.j = mod(-j, phi);
    return c;
  }

  LocalCharacter pow(long long t) const {
    LocalCharacter c = *this;
    c.j = mulmod(mod(t, phi), j, phi);
    return c;
  }

  /// Same character viewed at its conductor.
  LocalCharacter primitive() const {
    int c = conductor();
    if (c == level) return *this;
    LocalCharacter r = make(p, c, 0);
    if (c == 0) return r;
    auto v = at(r.root);
    r.j = v.num * (r.phi / v.den);
    return r;
  }

  static LocalCharacter make(long long p, int level, long long j) {
    LocalCharacter c;
    c.p = p;
    c.level = level;
    c.modulus = ipow(p, level);
    c.phi = level == 0 ? 1 : c.modulus / p * (p - 1);
    c.root = level == 0 ? 1 : primitive_root_prime_power(p, level);
    c.j = mod(j, c.phi);
    return c;
  }
};

/// Local component of a ray class character, at its conductor.
inline LocalCharacter local_component(const HeckeCharacter& chi) {
  const auto& g = *chi.rcg;
  auto r = LocalCharacter::make(g.p, chi.conductor, 0);
  if (chi.conductor == 0) return r;
  auto v = chi.eval_residue(r.root)->conj();
  r.j = v.num * (r.phi / v.den);
  return r;
}

/// All characters of (Z/p^c)^x of exact conductor p^c.
inline std::vector<LocalCharacter> local_characters(long long p, int c) {
  std::vector<LocalCharacter> out;
  auto base = LocalCharacter::make(p, c, 0);
  for (long long j = 0; j < base.phi; ++j) {
    auto chi = LocalCharacter::make(p, c, j);
    if (chi.conductor() == c) out.push_back(chi);
  }
  return out;
}

struct GaussResult {
  cplx value;
  Cyclotomic exact;
};

/// Field data needed to evaluate Gauss sums at a fixed degree-one prime.
class GaussContext {
 public:
  GaussContext(const NumberFieldData& nf, long long p, IntegralIdeal prime)
      : nf_(&nf), p_(p), prime_(std::move(prime)) {}

  const NumberFieldData& field() const { return *nf_; }
  long long p() const { return p_; }
  const IntegralIdeal& prime() const { return prime_; }

  /// G(phi, alpha) = phi(d_F)^{-1} sum_{x in (Z/p^c)^x} phi(x) efin(e alpha x / p^c),
  /// where e = 1 at the prime and 0 at its conjugates, and d_F is the idele
  /// equal to the different generator away from the prime and 1 at it.
  GaussResult gauss_sum(const LocalCharacter& phi, const FieldElement& alpha, bool exact = true) const {
    if (phi.level == 0) return {1.0, Cyclotomic::rational(1, Rat(1))};
    const auto& L = level(phi.level);
    long long q = phi.modulus;
    long long a = L.iso.reduce(alpha);
    long long big = q * (p_ - 1);  // common level of all phases
    std::vector<long long> hist(static_cast<size_t>(big), 0);
    // phi(d_F)^{-1} = phi_p(delta)
    auto shift = phi.at(L.delta_residue);
    long long shift_e = shift.num * (big / shift.den);
    long long x = 1;
    for (long long k = 0; k < phi.phi; ++k) {
      // phi(root^k) = e(j k / phi(q)); efin phase -{Tr(e) a x / q}
      long long chi_e = mulmod(phi.j, k, phi.phi) * (big / phi.phi);
      long long add = mod(-mulmod(mulmod(a, x, q), L.trace_e, q), q);
      ++hist[static_cast<size_t>(mod(chi_e + add * (big / q) + shift_e, big))];
      x = mulmod(x, phi.root, q);
    }
    GaussResult r;
    if (exact) {
      std::vector<Rat> h(hist.begin(), hist.end());
      r.exact = Cyclotomic::from_histogram(big, h);
      r.value = r.exact.value();
    } else {
      r.value = 0;
      for (long long e = 0; e < big; ++e)
        if (hist[e]) r.value += static_cast<double>(hist[e]) * expi_rat(make_rat(e, big));
    }
    return r;
  }

  GaussResult gauss_sum(const LocalCharacter& phi, long long a = 1, bool exact = true) const {
    return gauss_sum(phi, nf_->from_int(a), exact);
  }

  /// The efin phase of e*x/p^c computed from the global representative.
  Rat efin_phase_of(int c, long long x) const {
    const auto& L = level(c);
    FieldElement z = nf_->scale(L.idempotent, make_rat(x, ipow(p_, c)));
    return efin_phase(*nf_, z);
  }

  const FieldElement& idempotent(int c) const { return level(c).idempotent; }

 private:
  struct Level {
    LocalIso iso;
    FieldElement idempotent;
    long long trace_e = 1;
    long long delta_residue = 1;
  };

  const Level& level(int c) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(c);
    if (it != cache_.end()) return it->second;
    Level L;
    L.iso = split_local_iso(*nf_, p_, prime_, c);
    L.idempotent = local_idempotent(*nf_, L.iso);
    Rat tr = nf_->trace(L.idempotent);
    if (denominator(tr) != 1) throw NumericalError("idempotent has non-integral trace");
    L.trace_e = to_ll(mod(numerator(tr), Int(L.iso.modulus)));
    L.delta_residue = L.iso.reduce(nf_->different_gen);
    if (L.delta_residue % p_ == 0) throw InputError("different generator is not prime to p");
    return cache_.emplace(c, std::move(L)).first->second;
  }

  const NumberFieldData* nf_;
  long long p_;
  IntegralIdeal prime_;
  mutable std::mutex mu_;
  mutable std::map<int, Level> cache_;
};

/// W(phi) = N(c)^{-1} * nebentypus factor * phi(-1) * G(conj phi)^2, with W(trivial) = 1.
/// Throws NumericalError when |W| differs from 1 by more than tol.
inline cplx root_number_W(const GaussContext& ctx, const LocalCharacter& phi, cplx nebentypus_factor = 1.0,
                          double tol = 1e-9) {
  auto prim = phi.primitive();
  if (prim.level == 0) return 1.0;
  cplx g = ctx.gauss_sum(prim.conj(), 1, false).value;
  cplx w = nebentypus_factor * prim.at(-1).value() * g * g / static_cast<double>(prim.modulus);
  if (std::abs(std::abs(w) - 1.0) > tol)
    throw NumericalError("root number has |W| = " + std::to_string(std::abs(w)) + ", expected 1");
  return w;
}

// ---------------------------------------------------------------------------
// Galois orbits and averages.

/// t values in (Z/p^e)^x with t = 1 mod p^min(e, n0), ascending.
inline std::vector<long long> galois_exponents(long long p, long long order, int n0) {
  int e = 0;
  for (long long o = order; o > 1; o /= p) {
    if (o % p) throw InputError("Galois orbit needs a character of p-power order");
    ++e;
  }
  if (e == 0) return {1};
  long long pe = ipow(p, e), step = ipow(p, std::min(e, n0));
  std::vector<long long> out;
  for (long long t = 1; t < pe; t += step)
    if (t % p != 0) out.push_back(t);
  return out;
}

inline std::vector<HeckeCharacter> galois_orbit(const HeckeCharacter& chi, int n0) {
  std::vector<HeckeCharacter> out;
  for (long long t : galois_exponents(chi.rcg->p, chi.order, n0)) {
    auto c = chi.pow(t);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

struct AverageResult {
  Cyclotomic exact;
  cplx value;
  size_t orbit_size = 0;
};

/// Mean of chi^t((x)) over the Galois orbit, for a residue x mod p^n.
inline AverageResult average_char_residue(const HeckeCharacter& chi, int n0, long long x) {
  auto ts = galois_exponents(chi.rcg->p, chi.order, n0);
  AverageResult r;
  r.orbit_size = ts.size();
  auto v = chi.eval_residue(x);
  long long lvl = std::max<long long>(chi.order, 1);
  r.exact = Cyclotomic(lvl);
  if (v) {
    std::vector<Rat> hist(static_cast<size_t>(lvl), Rat(0));
    for (long long t : ts) {
      auto w = v->pow(t);
      hist[static_cast<size_t>(w.num * (lvl / w.den))] += make_rat(1, static_cast<long long>(ts.size()));
    }
    r.exact = Cyclotomic::from_histogram(lvl, hist);
  }
  r.value = r.exact.value();
  return r;
}

/// Mean of chi^t((gamma)) over the Galois orbit.
inline AverageResult average_char(const HeckeCharacter& chi, int n0, const FieldElement& gamma) {
  const auto& g = *chi.rcg;
  if (g.n == 0) return average_char_residue(chi, n0, 1);
  long long r = g.iso.reduce(gamma);
  return average_char_residue(chi, n0, r);
}

enum class SupportVariant {
  kOrderN0,       // value order <= p^{n0}
  kOrderN0Plus1,  // value order <= p^{n0 + 1}
  kExact,         // value order <= p^{max(n0, 1)}: what orbit enumeration gives
};

inline bool average_support_residue(const HeckeCharacter& chi, int n0, long long x, SupportVariant variant) {
  auto v = chi.eval_residue(x);
  if (!v) return false;
  long long p = chi.rcg->p;
  int allowed = variant == SupportVariant::kOrderN0       ? n0
                : variant == SupportVariant::kOrderN0Plus1 ? n0 + 1
                                                           : std::max(n0, 1);
  return v->order() <= ipow(p, allowed);
}

/// Root numbers W(chi^t) along the Galois orbit, indexed like galois_exponents.
inline std::vector<cplx> orbit_root_numbers(const GaussContext& ctx, const HeckeCharacter& chi, int n0,
                                            cplx nebentypus_factor = 1.0) {
  std::vector<cplx> out;
  for (long long t : galois_exponents(chi.rcg->p, chi.order, n0))
    out.push_back(root_number_W(ctx, local_component(chi.pow(t)), nebentypus_factor));
  return out;
}

/// Mean of W(chi^t) conj(chi^t)((x)) over the Galois orbit, given the orbit root numbers.
inline AverageResult average_iota_residue(const HeckeCharacter& chi, int n0, long long x,
                                          const std::vector<cplx>& orbit_w) {
  AverageResult r;
  auto ts = galois_exponents(chi.rcg->p, chi.order, n0);
  r.orbit_size = ts.size();
  r.value = 0;
  auto v = chi.eval_residue(x);
  if (!v) return r;
  for (size_t i = 0; i < ts.size(); ++i) r.value += orbit_w[i] * v->pow(ts[i]).conj().value();
  r.value /= static_cast<double>(ts.size());
  return r;
}

inline AverageResult average_iota_residue(const GaussContext& ctx, const HeckeCharacter& chi, int n0, long long x,
                                          cplx nebentypus_factor = 1.0) {
  return average_iota_residue(chi, n0, x, orbit_root_numbers(ctx, chi, n0, nebentypus_factor));
}

struct KloostermanRow {
  int n = 0;
  int conductor = 0;
  long long order = 0;
  size_t orbit_size = 0;
  double max_abs = 0;
  long long argmax = 0;
  double envelope = 0;  // N(p)^{-n/2}
  double constant = 0;  // max_abs / envelope
};

struct KloostermanReport {
  std::vector<KloostermanRow> rows;
  std::string note;
  bool stable = false;
  double spread = 0;
};

/// Sweep max_x |psi^iota_av(x)| over (Z/p^{n+1})^x for the first character of
/// order p^n (conductor p^{n+1} when n0 = 0) and compare with N(p)^{-n/2}.
inline KloostermanReport kloosterman_bound_report(const NumberFieldData& nf, long long p, const IntegralIdeal& prime,
                                                  int n0, const std::vector<int>& ns, double stability_factor = 4.0) {
  KloostermanReport rep;
  rep.note = "the trivial character is excluded (its average is identically W(1) = 1)";
  GaussContext ctx(nf, p, prime);
  for (int n : ns) {
    int level = n + 1 + n0;
    auto g = std::make_unique<RayClassGroup>(rcg_build(nf, p, prime, level));
    KloostermanRow row;
    row.n = n;
    for (const auto& chi : char_enumerate(*g, level, true)) {
      if (chi.order != ipow(p, n)) continue;
      row.conductor = chi.conductor;
      row.order = chi.order;
      auto ws = orbit_root_numbers(ctx, chi, n0);
      for (long long x = 1; x < g->modulus; ++x) {
        if (x % p == 0) continue;
        auto a = average_iota_residue(chi, n0, x, ws);
        row.orbit_size = a.orbit_size;
        if (std::abs(a.value) > row.max_abs) {
          row.max_abs = std::abs(a.value);
          row.argmax = x;
        }
      }
      break;
    }
    if (row.order == 0) throw InputError("no character of the requested order");
    row.envelope = std::pow(static_cast<double>(p), -0.5 * n);
    row.constant = row.max_abs / row.envelope;
    rep.rows.push_back(row);
  }
  double lo = 1e300, hi = 0;
  for (const auto& r : rep.rows) {
    lo = std::min(lo, r.constant);
    hi = std::max(hi, r.constant);
  }
  rep.spread = rep.rows.empty() ? 0 : hi / lo;
  rep.stable = rep.spread <= stability_factor;
  return rep;
}

}  // namespace lav

#endif  // LAV_GAUSS_HPP
