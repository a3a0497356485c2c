#ifndef LAV_CONES_HPP
#define LAV_CONES_HPP

// Fundamental domain for the unit action on Q and real quadratic fields,
// Shintani cones with measured coherence constants, and lattice counts in
// multiplicative progressions alpha (1 + p^n).

#include "lav/rayclass.hpp"

namespace lav {

struct Cone {
  std::vector<FieldElement> basis;  // z_1 .. z_d
  double coherence = 0;             // measured c_B
};

struct ConeDecomposition {
  std::vector<Cone> cones;
  FieldElement eps_plus;  // generator of the totally positive units (1 over Q)
};

namespace detail {

inline void require_supported(const NumberFieldData& nf) {
  if (nf.degree == 1) return;
  if (nf.degree == 2 && nf.r1 == 2) return;
  throw Unsupported("cones: only Q and real quadratic fields are supported");
}

inline std::vector<double> real_embed(const NumberFieldData& nf, const FieldElement& x) {
  std::vector<double> out;
  for (auto v : nf.embed(x)) out.push_back(static_cast<double>(v.real()));
  return out;
}

/// Fundamental unit with sigma_1(u) > 1.
inline FieldElement fundamental_unit(const NumberFieldData& nf) {
  if (nf.unit_gens.size() < 2) throw InputError("field document lacks a fundamental unit");
  FieldElement u = nf.unit_gens[1];
  auto e = real_embed(nf, u);
  if (e[0] < 0) {
    u = nf.neg(u);
    e[0] = -e[0];
  }
  if (e[0] < 1) u = nf.inverse(u);
  return u;
}

}  // namespace detail

/// Reduction of totally nonzero elements modulo units into the half-open
/// domain: sigma_1 > 0 and lambda(x) in [0, 1), where lambda measures
/// log|sigma_1 x / sigma_2 x| in units of 2 log sigma_1(u).
class DomainReducer {
 public:
  explicit DomainReducer(const NumberFieldData& nf) : nf_(&nf) {
    detail::require_supported(nf);
    if (nf.degree == 2) {
      u_ = detail::fundamental_unit(nf);
      log_u_ = std::log(detail::real_embed(nf, u_)[0]);
      u_inv_ = nf.inverse(u_);
    }
  }

  double log_unit() const { return log_u_; }
  const FieldElement& unit() const { return u_; }

  double lambda(const FieldElement& x) const {
    auto e = detail::real_embed(*nf_, x);
    return (std::log(std::abs(e[0])) - std::log(std::abs(e[1]))) / (2 * log_u_);
  }

  /// Integer m with x u^{-m} in the domain (up to sign).
  long long shift(const FieldElement& x) const {
    double l = lambda(x);
    long long m = static_cast<long long>(std::floor(l));
    long long r = std::llround(l);
    if (std::abs(l - static_cast<double>(r)) < 1e-9) {
      // exact boundary test: y = x u^{-r} lies on lambda = 0 iff y^2 is rational
      FieldElement y = nf_->mul(x, nf_->pow(u_inv_, r));
      FieldElement y2 = nf_->mul(y, y);
      bool rational = true;
      FieldElement q = nf_->from_rational(nf_->trace(y2) / 2);
      rational = q == y2;
      if (rational) return r;
      return l < static_cast<double>(r) ? r - 1 : r;
    }
    return m;
  }

  FieldElement reduce(const FieldElement& x) const {
    if (nf_->is_zero(x)) throw InputError("cannot reduce zero");
    FieldElement y = x;
    if (nf_->degree == 2) {
      if (nf_->norm(x) == 0) throw InputError("element is not totally nonzero");
      long long m = shift(x);
      if (m != 0) y = nf_->mul(x, nf_->pow(u_inv_, m));
    }
    if (detail::real_embed(*nf_, y)[0] < 0) y = nf_->neg(y);
    return y;
  }

  bool in_domain(const FieldElement& x) const {
    auto e = detail::real_embed(*nf_, x);
    if (e[0] <= 0) return false;
    if (nf_->degree == 1) return true;
    return shift(x) == 0;
  }

 private:
  const NumberFieldData* nf_;
  FieldElement u_, u_inv_;
  double log_u_ = 0;
};

/// Shintani cones: Q gives the single ray <1>; a real quadratic field gives
/// one cone w <1, eps_+> per sign class w of F_R^x / O^x.
inline ConeDecomposition build_cones(const NumberFieldData& nf, int samples = 2000) {
  detail::require_supported(nf);
  ConeDecomposition dec;
  if (nf.degree == 1) {
    dec.eps_plus = nf.from_int(1);
    dec.cones.push_back({{nf.from_int(1)}, 1.0});
    return dec;
  }
  FieldElement u = detail::fundamental_unit(nf);
  auto e = detail::real_embed(nf, u);
  FieldElement eps = (e[1] > 0) ? u : nf.mul(u, u);
  dec.eps_plus = eps;
  // sign classes reachable from (+,+) by units
  std::vector<std::pair<int, int>> reach;
  for (const auto& g : {nf.from_int(1), nf.from_int(-1), u, nf.neg(u)}) {
    auto s = detail::real_embed(nf, g);
    reach.push_back({s[0] > 0 ? 1 : -1, s[1] > 0 ? 1 : -1});
  }
  // a sign representative for each orbit of sign classes
  std::vector<FieldElement> reps{nf.from_int(1)};
  bool covered_mixed = false;
  for (auto [a, b] : reach)
    if (a != b) covered_mixed = true;
  if (!covered_mixed) {
    // need an element with signs (+,-): theta - floor(theta) - ... pick x = theta + t
    for (long long t = -50; t <= 50; ++t) {
      std::vector<Rat> pw(2, Rat(0));
      pw[0] = Rat(t);
      pw[1] = 1;
      FieldElement x = nf.from_power_basis(pw);
      auto s = detail::real_embed(nf, x);
      if (s[0] > 0 && s[1] < 0) {
        reps.push_back(x);
        break;
      }
    }
  }
  for (const auto& w : reps) {
    Cone c;
    c.basis = {w, nf.mul(w, eps)};
    // coherence: max(a, b) <= c |sigma(a z1 + b z2)| over sampled integer points
    auto z1 = detail::real_embed(nf, c.basis[0]), z2 = detail::real_embed(nf, c.basis[1]);
    double worst = 0;
    int side = static_cast<int>(std::sqrt(static_cast<double>(samples))) + 1;
    for (int a = 0; a <= side; ++a)
      for (int b = 0; b <= side; ++b) {
        if (a == 0 && b == 0) continue;
        for (int s = 0; s < 2; ++s) {
          double v = std::abs(a * z1[s] + b * z2[s]);
          worst = std::max(worst, std::max(a, b) / v);
        }
      }
    c.coherence = worst;
    dec.cones.push_back(c);
  }
  return dec;
}

/// Is x in u * (union of cones) for some unit u? Used for sampled checks.
inline bool covered_by_cones(const NumberFieldData& nf, const ConeDecomposition& dec, const DomainReducer& red,
                             const FieldElement& x) {
  FieldElement y = red.reduce(x);
  // try y and its unit translates by eps_+ and signs
  std::vector<FieldElement> tries{y, nf.neg(y)};
  if (nf.degree == 2) {
    auto ue = nf.inverse(dec.eps_plus);
    for (const auto& t : std::vector<FieldElement>{y, nf.neg(y)}) {
      tries.push_back(nf.mul(t, dec.eps_plus));
      tries.push_back(nf.mul(t, ue));
      tries.push_back(nf.mul(t, red.unit()));
      tries.push_back(nf.mul(nf.mul(t, red.unit()), ue));
    }
  }
  for (const auto& t : tries)
    for (const auto& c : dec.cones) {
      if (nf.degree == 1) {
        if (t.coords[0] > 0) return true;
        continue;
      }
      // coordinates of t in the basis z1, z2
      Matrix<Rat> m{{c.basis[0].coords[0], c.basis[1].coords[0]}, {c.basis[0].coords[1], c.basis[1].coords[1]}};
      auto inv = inverse(m);
      Rat a = inv[0][0] * t.coords[0] + inv[0][1] * t.coords[1];
      Rat b = inv[1][0] * t.coords[0] + inv[1][1] * t.coords[1];
      if (a > 0 && b >= 0) return true;
    }
  return false;
}

// ---------------------------------------------------------------------------
// Enumeration of alpha + L in the domain with |N| <= x.

struct Witness {
  FieldElement beta;
  Rat norm;
};

struct ProgressionCount {
  FieldElement alpha;
  long long p = 0;
  int n = 0;
  double x = 0;
  long long count = 0;
  long long candidates = 0;
  std::vector<Witness> witnesses;
};

namespace detail {

/// All beta = offset + i b_1 + ... in the fundamental domain with |N(beta)| <= x,
/// beta != 0. The embedding box is |sigma_1| < sqrt(R x) * grow, |sigma_2| <= sqrt(x) * grow.
inline std::vector<Witness> enumerate_domain(const NumberFieldData& nf, const DomainReducer& red,
                                             const FieldElement& offset, const std::vector<FieldElement>& lattice,
                                             double x, double grow, long long cap, long long* candidates) {
  std::vector<Witness> out;
  long long cand = 0;
  Rat X = Rat(static_cast<long long>(std::floor(x)));
  if (nf.degree == 1) {
    Rat a = offset.coords[0], b = abs(lattice[0].coords[0]);
    double lo = (-x * grow - a.convert_to<double>()) / b.convert_to<double>();
    double hi = (x * grow - a.convert_to<double>()) / b.convert_to<double>();
    for (long long i = static_cast<long long>(std::floor(lo)) - 1; i <= static_cast<long long>(std::ceil(hi)) + 1; ++i) {
      if (++cand > cap) throw InputError("enumeration box exceeds the desk-scale cap");
      Rat beta = a + Rat(i) * b;
      if (beta <= 0 || beta > X) continue;
      out.push_back({nf.from_rational(beta), beta});
    }
    if (candidates) *candidates = cand;
    return out;
  }
  double R = std::exp(2 * red.log_unit());
  double B1 = std::sqrt(R * x) * grow, B2 = std::sqrt(x) * grow;
  auto so = real_embed(nf, offset), s1 = real_embed(nf, lattice[0]), s2 = real_embed(nf, lattice[1]);
  // (i, j) -> (sigma_1, sigma_2) = so + i s1 + j s2
  double det2 = s1[0] * s2[1] - s2[0] * s1[1];
  auto to_ij = [&](double a, double b) {
    double da = a - so[0], db = b - so[1];
    return std::pair<double, double>{(da * s2[1] - s2[0] * db) / det2, (s1[0] * db - da * s1[1]) / det2};
  };
  double imin = 1e300, imax = -1e300;
  for (double a : {-B1, B1})
    for (double b : {-B2, B2}) {
      auto [i, j] = to_ij(a, b);
      imin = std::min(imin, i);
      imax = std::max(imax, i);
    }
  for (long long i = static_cast<long long>(std::floor(imin)) - 1; i <= static_cast<long long>(std::ceil(imax)) + 1;
       ++i) {
    // j-interval from |so_k + i s1_k + j s2_k| <= B_k, k = 1, 2
    double jlo = -1e300, jhi = 1e300;
    bool empty = false;
    for (int k = 0; k < 2; ++k) {
      double base = so[k] + static_cast<double>(i) * s1[k], B = k == 0 ? B1 : B2;
      if (s2[k] == 0) {
        if (std::abs(base) > B) empty = true;
        continue;
      }
      double a = (-B - base) / s2[k], b = (B - base) / s2[k];
      jlo = std::max(jlo, std::min(a, b));
      jhi = std::min(jhi, std::max(a, b));
    }
    if (empty || jlo > jhi) continue;
    for (long long j = static_cast<long long>(std::floor(jlo)) - 1; j <= static_cast<long long>(std::ceil(jhi)) + 1;
         ++j) {
      if (++cand > cap) throw InputError("enumeration box exceeds the desk-scale cap");
      FieldElement beta = nf.add(offset, nf.add(nf.scale(lattice[0], Rat(i)), nf.scale(lattice[1], Rat(j))));
      Rat N = abs(nf.norm(beta));
      if (N == 0 || N > X) continue;
      if (!red.in_domain(beta)) continue;
      out.push_back({beta, N});
    }
  }
  if (candidates) *candidates = cand;
  return out;
}

}  // namespace detail

inline constexpr long long kEnumerationCap = 10000000;

/// U_{alpha,n}(x): number of beta in alpha (1 + prime^n) inside the domain with |N(beta)| <= x.
inline ProgressionCount count_progression(const NumberFieldData& nf, const FieldElement& alpha,
                                          const IntegralIdeal& prime, long long p, int n, double x,
                                          bool keep_witnesses = false, double grow = 1.0) {
  if (x < 1) throw InputError("count_progression needs x >= 1");
  DomainReducer red(nf);
  auto pn = nf.ideal_pow(prime, n);
  if (n > 0) {
    auto iso = split_local_iso(nf, p, prime, 1);
    if (iso.reduce(alpha) % p == 0) throw InputError("alpha is not coprime to the prime");
  }
  std::vector<FieldElement> lat;
  for (const auto& b : nf.ideal_basis(pn)) lat.push_back(nf.mul(alpha, b));
  ProgressionCount pc;
  pc.alpha = alpha;
  pc.p = p;
  pc.n = n;
  pc.x = x;
  auto w = detail::enumerate_domain(nf, red, alpha, lat, x, grow, kEnumerationCap, &pc.candidates);
  pc.count = static_cast<long long>(w.size());
  if (keep_witnesses) pc.witnesses = std::move(w);
  return pc;
}

enum class MinNormMode {
  kDomain,   // alpha in (1 + p^n) inside the domain, alpha != 1
  kNonUnit,  // alpha in (1 + p^n), alpha not a unit
};

/// min |N(alpha)| over the chosen set, by growing enumeration boxes.
inline Rat min_norm_coset(const NumberFieldData& nf, const IntegralIdeal& prime, long long p, int n,
                          MinNormMode mode = MinNormMode::kDomain) {
  if (n < 1) throw InputError("min_norm_coset needs n >= 1");
  DomainReducer red(nf);
  auto pn = nf.ideal_pow(prime, n);
  auto lat = nf.ideal_basis(pn);
  FieldElement one = nf.from_int(1);
  for (double x = std::pow(static_cast<double>(p), n) / 4 + 2;; x *= 2) {
    std::optional<Rat> best;
    if (mode == MinNormMode::kDomain) {
      for (const auto& w : detail::enumerate_domain(nf, red, one, lat, x, 1.0, kEnumerationCap, nullptr)) {
        if (w.beta == one) continue;
        if (!best || w.norm < *best) best = w.norm;
      }
    } else {
      // every non-unit of 1 + p^n has a unit multiple in the domain; scan the domain
      // images of the whole coset: beta = u (1 + g) with u a unit; test beta * u^{-1} in 1 + p^n
      // by enumerating elements of the domain and their unit orbit representatives is
      // unnecessary over Q, where units are +-1.
      if (nf.degree != 1) throw Unsupported("non-unit minimum is implemented over Q");
      long long pn_int = ipow(p, n);
      for (long long k = -static_cast<long long>(x) / pn_int - 1; k <= static_cast<long long>(x) / pn_int + 1; ++k) {
        long long a = 1 + k * pn_int;
        if (a == 1 || a == -1 || a == 0) continue;
        Rat N = Rat(std::llabs(a));
        if (N <= Rat(static_cast<long long>(x)) && (!best || N < *best)) best = N;
      }
    }
    if (best) return *best;
    if (x > 1e12) throw NumericalError("min_norm_coset: no element found");
  }
}

struct TorsionRow {
  RayClassElement cls;
  long long rep = 0;  // minimal norm of an integral ideal in the class
  double ratio = 0;   // rep / N(p)^{n / |Delta|}
};

struct TorsionReport {
  int n = 0;
  size_t delta_order = 1;
  std::vector<TorsionRow> rows;
  bool vacuous = true;
};

/// For each nontrivial class of Delta, the minimal norm of an integral ideal
/// prime to p in that ray class, against N(p)^{n/|Delta|}.
inline TorsionReport torsion_norm_bound(const RayClassGroup& g, long long search_limit = 10000000) {
  const auto& nf = *g.nf;
  TorsionReport rep;
  rep.n = g.n;
  rep.delta_order = g.delta.size();
  auto id = g.group.identity();
  std::vector<RayClassElement> todo;
  for (const auto& d : g.delta)
    if (d != id) todo.push_back(d);
  rep.vacuous = todo.empty();
  if (rep.vacuous) return rep;
  double env = std::pow(static_cast<double>(g.p), static_cast<double>(g.n) / static_cast<double>(rep.delta_order));
  std::map<RayClassElement, long long> found;
  DomainReducer red(nf);
  auto basis = nf.ideal_basis(nf.unit_ideal());
  for (double x = 16; found.size() < todo.size(); x *= 2) {
    if (x > static_cast<double>(search_limit)) throw NumericalError("torsion_norm_bound: search limit reached");
    for (const auto& w : detail::enumerate_domain(nf, red, nf.zero(), basis, x, 1.0, kEnumerationCap, nullptr)) {
      long long r = g.iso.reduce(w.beta);
      if (r % g.p == 0) continue;
      auto c = g.residue_class(r);
      if (std::find(todo.begin(), todo.end(), c) == todo.end()) continue;
      long long N = to_ll(numerator(w.norm));
      auto it = found.find(c);
      if (it == found.end() || N < it->second) found[c] = N;
    }
  }
  for (const auto& c : todo) rep.rows.push_back({c, found[c], static_cast<double>(found[c]) / env});
  return rep;
}

}  // namespace lav

#endif  // LAV_CONES_HPP
