#ifndef LAV_LSERIES_HPP
#define LAV_LSERIES_HPP

// Newform coefficient tables, the Gamma factor, the smoothing kernel and
// cutoff functions, and the smoothed approximate functional equation for
// twisted central values.

#include "lav/gauss.hpp"
#include "lav/special.hpp"

#include <functional>

namespace lav {

// ---------------------------------------------------------------------------
// Newforms.

struct WeightData {
  std::vector<int> k;   // k_sigma per embedding (real first, then complex pairs)
  std::vector<int> m;   // m_sigma per embedding
  std::vector<int> J;   // indices of real places in the type J

  int central() const { return k.empty() ? 0 : k[0] + 2 * m[0]; }
  int max_m() const { return m.empty() ? 0 : *std::max_element(m.begin(), m.end()); }
};

struct NewformData {
  std::string label;
  std::string field_label = "Q";
  WeightData weights;
  long long level_norm = 1;
  bool trivial_nebentypus = true;
  int n0 = 0;
  double theta = 0.0;
  cplx eta = 1.0;               // a_{W_N f}(a) = eta * a_f(a)
  std::vector<double> coeff;    // coeff[n] = a_f((n)), coeff[0] unused
  std::vector<Int> exact;       // exact integer coefficients when available

  int k() const { return weights.central(); }
  size_t max_n() const { return coeff.empty() ? 0 : coeff.size() - 1; }
};

/// tau(1..nmax) from q prod (1 - q^n)^24 = q (prod (1 - q^n)^3)^8, the cube
/// being Jacobi's sparse series sum (-1)^m (2m+1) q^{m(m+1)/2}.
inline std::vector<Int> tau_table(size_t nmax) {
  if (nmax > 1000000) throw InputError("tau_table: nmax above 10^6");
  size_t len = nmax;  // coefficients of q^0 .. q^{nmax-1} of eta^24 / q
  std::vector<std::pair<size_t, long long>> jac;
  for (long long m = 0;; ++m) {
    size_t e = static_cast<size_t>(m * (m + 1) / 2);
    if (e >= len) break;
    jac.push_back({e, (m % 2 ? -1 : 1) * (2 * m + 1)});
  }
  std::vector<__int128> cur(len, 0);
  for (auto [e, c] : jac) cur[e] = c;
  for (int rep = 1; rep < 8; ++rep) {
    std::vector<__int128> next(len, 0);
    for (auto [e, c] : jac)
      for (size_t i = 0; i + e < len; ++i)
        if (cur[i] != 0) next[i + e] += cur[i] * c;
    cur = std::move(next);
  }
  std::vector<Int> out(nmax + 1, Int(0));
  for (size_t n = 1; n <= nmax; ++n) {
    __int128 v = cur[n - 1];
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    Int hi = Int(static_cast<unsigned long long>(u >> 64)), lo = Int(static_cast<unsigned long long>(u));
    Int r = (hi << 64) + lo;
    out[n] = neg ? Int(-r) : r;
  }
  return out;
}

inline int divisor_count(long long n) {
  int d = 1;
  for (long long q = 2; q * q <= n; ++q) {
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    d *= e + 1;
  }
  if (n > 1) d *= 2;
  return d;
}

/// |a(p)| <= 2 p^{(k-1)/2 + theta} at primes, and |a(n)| <= d(n) n^{(k-1)/2 + theta}
/// for every stored n. Throws InputError naming the first offending ideal.
inline void check_ramanujan(const NewformData& f, double slack = 1e-9) {
  double e = (f.k() - 1) / 2.0 + f.theta;
  for (size_t n = 1; n <= f.max_n(); ++n) {
    double bound = divisor_count(static_cast<long long>(n)) * std::pow(static_cast<double>(n), e);
    if (std::abs(f.coeff[n]) > bound * (1 + slack))
      throw InputError("Ramanujan bound violated at ideal (" + std::to_string(n) + "): |a| = " +
                       std::to_string(std::abs(f.coeff[n])) + " > " + std::to_string(bound));
  }
}

/// Exact check |tau(p)| <= 2 p^{11/2} for primes p <= pmax, i.e. tau(p)^2 <= 4 p^11.
/// Returns the first violating prime or 0.
inline long long ramanujan_exact_tau(const std::vector<Int>& tau, long long pmax) {
  for (long long p = 2; p <= pmax && p < static_cast<long long>(tau.size()); ++p) {
    if (!is_prime(p)) continue;
    Int p11 = 1;
    for (int i = 0; i < 11; ++i) p11 *= p;
    if (tau[p] * tau[p] > 4 * p11) return p;
  }
  return 0;
}

/// C_{F,J,k} and the parity condition (-1)^{r1 (k-2)} C^2 = 1.
struct ParityResult {
  cplx C;
  bool ok;
};

inline ParityResult parity_and_constant(int r1, int r2, const WeightData& w) {
  Rat phase = 0;
  long long sign_exp = r1;
  for (int s = 0; s < r1; ++s) {
    bool inJ = std::find(w.J.begin(), w.J.end(), s) != w.J.end();
    phase += make_rat(inJ ? -w.k[s] : w.k[s], 4);
  }
  for (int c = 0; c < r2; ++c) sign_exp += (w.k[r1 + 2 * c] - 2) + 1;
  cplx C = (sign_exp % 2 ? -1.0 : 1.0) * expi_rat(phase);
  int k = w.central();
  double par = (static_cast<long long>(r1) * (k - 2)) % 2 ? -1.0 : 1.0;
  return {C, std::abs(par * C * C - 1.0) < 1e-12};
}

/// Level-one weight-12 form Delta with tau(n) for n <= nmax.
inline NewformData builtin_delta(size_t nmax) {
  NewformData f;
  f.label = "delta";
  f.weights = {{12}, {0}, {}};
  f.exact = tau_table(nmax);
  f.coeff.resize(nmax + 1);
  for (size_t n = 1; n <= nmax; ++n) f.coeff[n] = f.exact[n].convert_to<double>();
  // classical level-one W-action: Lambda(s) = i^k Lambda(k - s) = C * eta * Lambda(k - s)
  auto par = parity_and_constant(1, 0, f.weights);
  f.eta = (f.k() % 4 == 0 ? 1.0 : -1.0) / par.C;
  return f;
}

/// Newform document over Q: header fields plus rows {ideal_label, a_re, a_im}
/// where ideal_label is the positive generator n. Prime rows are required;
/// other rows are checked against the Hecke recursion.
inline NewformData newform_load(const nlohmann::json& doc, size_t nmax) {
  NewformData f;
  try {
    f.label = doc.value("label", std::string("form"));
    f.field_label = doc.value("field_label", std::string("Q"));
    if (f.field_label != "Q") throw Unsupported("coefficient expansion is implemented over Q only");
    f.weights.k = doc.at("weight_vector").get<std::vector<int>>();
    f.weights.m = doc.at("m_vector").get<std::vector<int>>();
    f.weights.J = doc.value("type_J", std::vector<int>{});
    f.level_norm = doc.value("level_norm", 1LL);
    auto neb = doc.value("nebentypus", nlohmann::json("trivial"));
    f.trivial_nebentypus = neb.is_string() && neb.get<std::string>() == "trivial";
    if (!f.trivial_nebentypus) throw Unsupported("only trivial nebentypus is supported");
    f.n0 = doc.value("n0", 0);
    f.theta = doc.value("theta", 0.0);
    auto al = doc.value("atkin_lehner", nlohmann::json(nullptr));
    if (al.is_array()) f.eta = {al.at(0).get<double>(), al.at(1).get<double>()};
    else if (al.is_number()) f.eta = al.get<double>();
    else {
      if (f.level_norm != 1) throw InputError("atkin_lehner pseudo-eigenvalue required for level > 1");
      auto par = parity_and_constant(1, 0, f.weights);
      f.eta = std::pow(cplx(0, 1), f.k()) / par.C;
    }
    for (int kk : f.weights.k)
      if (kk < 2) throw InputError("weights k_sigma must be >= 2");

    std::map<long long, cplx> given;
    for (const auto& row : doc.at("rows")) {
      long long n = std::stoll(row.at(0).get<std::string>());
      if (n < 1) throw InputError("ideal label must be a positive integer");
      given[n] = {std::stod(row.at(1).get<std::string>()), std::stod(row.at(2).get<std::string>())};
    }
    int k = f.k();
    std::vector<cplx> a(nmax + 1, 0.0);
    a[1] = 1.0;
    std::vector<long long> spf(nmax + 1, 0);  // smallest prime factor
    for (size_t i = 2; i <= nmax; ++i)
      if (!spf[i])
        for (size_t j = i; j <= nmax; j += i)
          if (!spf[j]) spf[j] = static_cast<long long>(i);
    for (size_t n = 2; n <= nmax; ++n) {
      long long p = spf[n];
      size_t m = n;
      int r = 0;
      while (m % p == 0) {
        m /= p;
        ++r;
      }
      if (m > 1) {
        a[n] = a[m] * a[n / m];
        continue;
      }
      if (r == 1) {
        auto it = given.find(p);
        if (it == given.end()) throw InputError("missing prime coefficient at ideal (" + std::to_string(p) + ")");
        a[n] = it->second;
        double bound = 2 * std::pow(static_cast<double>(p), (k - 1) / 2.0 + f.theta);
        if (std::abs(a[n]) > bound * (1 + 1e-9))
          throw InputError("Ramanujan bound violated at ideal (" + std::to_string(p) + ")");
        continue;
      }
      size_t prev = n / p, prev2 = prev / p;
      if (f.level_norm % p == 0) a[n] = a[prev] * a[p];
      else a[n] = a[p] * a[prev] - std::pow(static_cast<double>(p), k - 1) * a[prev2];
    }
    for (const auto& [n, v] : given) {
      if (static_cast<size_t>(n) > nmax) continue;
      if (std::abs(a[n] - v) > 1e-6 * std::max(1.0, std::abs(v)))
        throw InputError("coefficient at ideal (" + std::to_string(n) + ") contradicts Hecke multiplicativity");
    }
    f.coeff.resize(nmax + 1);
    for (size_t n = 1; n <= nmax; ++n) {
      if (std::abs(a[n].imag()) > 1e-9 * std::max(1.0, std::abs(a[n])))
        throw Unsupported("complex coefficients are not supported");
      f.coeff[n] = a[n].real();
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("newform document parse error: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw InputError("newform document has a malformed number");
  }
  check_ramanujan(f);
  return f;
}

// ---------------------------------------------------------------------------
// Gamma factor.

class GammaFactor {
 public:
  GammaFactor(const NumberFieldData& nf, WeightData w) : w_(std::move(w)), r1_(nf.r1), r2_(nf.r2) {
    if (static_cast<int>(w_.k.size()) != nf.degree || static_cast<int>(w_.m.size()) != nf.degree)
      throw InputError("weight vectors must have one entry per embedding");
    log_abs_disc_ = std::log(std::abs(nf.discriminant.convert_to<double>()));
    // [O^x : O^x_+] = 2^{rank of the unit sign matrix over F_2}
    std::vector<std::vector<int>> rows;
    for (const auto& u : nf.unit_gens) {
      auto e = nf.embed(u);
      std::vector<int> r;
      for (int s = 0; s < r1_; ++s) r.push_back(e[s].real() < 0 ? 1 : 0);
      rows.push_back(r);
    }
    int rank = 0;
    for (int col = 0; col < r1_; ++col) {
      size_t piv = rank;
      while (piv < rows.size() && rows[piv][col] == 0) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[piv], rows[rank]);
      for (size_t r = 0; r < rows.size(); ++r)
        if (static_cast<int>(r) != rank && rows[r][col])
          for (int j = 0; j < r1_; ++j) rows[r][j] ^= rows[rank][j];
      ++rank;
    }
    unit_index_ = std::ldexp(1.0, rank);
    log_const_ = r1_ * std::log(2.0) - std::log(unit_index_);
    for (int c = 0; c < r2_; ++c) {
      int ns = w_.k[r1_ + 2 * c] - 2, nsc = w_.k[r1_ + 2 * c + 1] - 2;
      int nstar = ns + nsc + 2;
      double binom = std::exp(lgamma_r(nstar + 1.0) - lgamma_r(nsc + 2.0) - lgamma_r(nstar - nsc));
      log_const_ += std::log(0.25 * binom);
    }
  }

  double unit_index() const { return unit_index_; }
  const WeightData& weights() const { return w_; }

  cplx log_value(cplx s) const {
    cplx r = log_const_ + s * log_abs_disc_;
    for (int m : w_.m) r += -(s - static_cast<double>(m)) * std::log(kTwoPi) + lgamma_c(s - static_cast<double>(m));
    return r;
  }

  cplx value(cplx s) const {
    for (int m : w_.m) {
      cplx z = s - static_cast<double>(m);
      if (z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real()))
        throw std::domain_error("Gamma factor evaluated at a pole");
    }
    return std::exp(log_value(s));
  }

 private:
  WeightData w_;
  int r1_, r2_;
  double log_abs_disc_ = 0;
  double unit_index_ = 1;
  double log_const_ = 0;
};

// ---------------------------------------------------------------------------
// Smoothing kernel kappa(t) = int Phi(u) u^t du/u for the bump
// Phi(u) = c exp(-1/(1 - (log u)^2)) on [1/e, e].

class SmoothingKernel {
 public:
  explicit SmoothingKernel(int nodes = 4000) : n_(nodes) {
    h_ = 2.0 / n_;
    v_.resize(n_ - 1);
    w_.resize(n_ - 1);
    double mass = 0;
    for (int i = 1; i < n_; ++i) {
      double v = -1.0 + i * h_;
      v_[i - 1] = v;
      w_[i - 1] = std::exp(-1.0 / (1.0 - v * v));
      mass += w_[i - 1];
    }
    log_norm_ = -std::log(mass * h_);
  }

  int nodes() const { return n_; }

  /// log kappa(t); kappa(0) = 1.
  cplx log_kappa(cplx t) const {
    // scale by the largest exponent to keep the sum in range
    double best = -1e300;
    for (size_t i = 0; i < v_.size(); ++i) best = std::max(best, std::log(w_[i]) + t.real() * v_[i]);
    cplx step = std::exp(t * h_);
    cplx acc = 0;
    cplx ev = std::exp(t * v_[0] - best);
    for (size_t i = 0; i < v_.size(); ++i) {
      if (i % 64 == 0) ev = std::exp(t * v_[i] - best);
      acc += w_[i] * ev;
      ev *= step;
    }
    return std::log(acc * h_) + best + log_norm_;
  }

  cplx kappa(cplx t) const { return std::exp(log_kappa(t)); }

 private:
  int n_;
  double h_;
  double log_norm_ = 0;
  std::vector<double> v_, w_;
};

// ---------------------------------------------------------------------------
// Cutoff functions
//   V_{1,s}(x) = (1/2 pi i) int kappa(t) Gamma_F(s + t) x^{-t} dt / t
//   V_{2,s}(x) = (1/2 pi i) int kappa(-t) Gamma_F(s + t) x^{-t} dt / t
// on Re t = c, with c picked per x from a fixed set; for c < 0 the residue
// Gamma_F(s) at t = 0 is added.

class CutoffFunction {
 public:
  CutoffFunction(const GammaFactor& gf, const SmoothingKernel& ker, int side, double s, double h_scale = 1.0)
      : gf_(&gf), ker_(&ker), side_(side), s_(s), h_scale_(h_scale) {
    if (side != 1 && side != 2) throw InputError("cutoff side must be 1 or 2");
    double lo = gf.weights().max_m() - s;  // poles of Gamma_F(s + t) lie at Re t <= lo
    for (double c : {2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0, 24.0, 32.0, 48.0, 64.0, 96.0, 128.0}) cand_.push_back(c);
    for (double c : {-0.5, -1.0, -1.5, -2.0, -3.0, -4.0, -5.0, -6.0, -8.0, -10.0, -12.0, -16.0})
      if (c > lo + 0.25) cand_.push_back(c);
    log_gamma_s_ = gf.log_value(s).real();
    for (double c : cand_)
      peak_.push_back((ker.log_kappa(side == 1 ? c : -c) + gf.log_value(s + c) - std::log(std::abs(c))).real());
  }

  double s() const { return s_; }
  double gamma_s() const { return std::exp(log_gamma_s_); }

  /// V_{i,s}(x) for x > 0 (real s, so V is real).
  double operator()(double x) const { return eval(x, nullptr); }

  /// Value and the contour abscissa used.
  double eval(double x, double* used_c) const {
    if (!(x > 0)) throw InputError("cutoff function needs x > 0");
    double lx = std::log(x);
    const Contour* best = nullptr;
    double best_score = 1e300;
    double best_c = cand_[0];
    for (size_t i = 0; i < cand_.size(); ++i) {
      double c = cand_[i];
      // size of the integrand at u = 0 relative to the output scale
      double score = peak_[i] - c * lx;
      if (c < 0) score = std::max(score, log_gamma_s_ - 36.0);
      if (score < best_score) {
        best_score = score;
        best_c = c;
      }
    }
    best = &contour(best_c);
    if (used_c) *used_c = best->c;
    return integrate(*best, lx) + (best->c < 0 ? std::exp(log_gamma_s_) : 0.0);
  }

  /// Relative disagreement between step h and step h/2 at x.
  double step_halving_gap(double x) const {
    CutoffFunction fine(*gf_, *ker_, side_, s_, h_scale_ / 2);
    double a = (*this)(x), b = fine(x);
    double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
  }

 private:
  struct Contour {
    double c = 0;
    double h = 0;
    std::vector<cplx> g;  // exp(log g_k - logmax), k = 0..K, g_k at t = c + i k h
    double logmax = 0;
  };

  const Contour& contour(double c) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(c);
    if (it != cache_.end()) return it->second;
    Contour ct;
    ct.c = c;
    double lo = gf_->weights().max_m() - s_;
    double d = std::min(std::abs(c), c - lo);
    ct.h = std::min(0.125, d / 6.0) * h_scale_;
    std::vector<cplx> lg;
    double mx = -1e300;
    int quiet = 0;
    for (int k = 0; k < 200000; ++k) {
      cplx t(c, k * ct.h);
      cplx v = ker_->log_kappa(side_ == 1 ? t : -t) + gf_->log_value(s_ + t) - std::log(t);
      lg.push_back(v);
      mx = std::max(mx, v.real());
      if (v.real() < mx - 43.0) {  // below 1e-19 of the peak
        if (++quiet > 16) break;
      } else {
        quiet = 0;
      }
    }
    ct.logmax = mx;
    for (const auto& v : lg) ct.g.push_back(std::exp(v - mx));
    return cache_.emplace(c, std::move(ct)).first->second;
  }

  static double integrate(const Contour& ct, double lx) {
    // (h / 2 pi) x^{-c} [g_0 + 2 Re sum_{k >= 1} g_k e^{-i k h log x}]
    cplx rot = std::exp(cplx(0, -ct.h * lx));
    cplx ph = 1.0;
    double acc = ct.g[0].real();
    for (size_t k = 1; k < ct.g.size(); ++k) {
      if (k % 32 == 0) ph = std::exp(cplx(0, -static_cast<double>(k) * ct.h * lx));
      else ph *= rot;
      acc += 2.0 * (ct.g[k] * ph).real();
    }
    double lscale = ct.logmax - ct.c * lx;
    return ct.h / kTwoPi * acc * std::exp(lscale);
  }

  const GammaFactor* gf_;
  const SmoothingKernel* ker_;
  int side_;
  double s_;
  double h_scale_;
  std::vector<double> cand_;
  std::vector<double> peak_;
  double log_gamma_s_ = 0;
  mutable std::mutex mu_;
  mutable std::map<double, Contour> cache_;
};

// ---------------------------------------------------------------------------
// Approximate functional equation.
//
// Gamma_F(s) L(s, f x chi) = sum_n a(n) w1(n) n^{-s} V_{1,s}(n / y)
//     + C eta Q^{k/2 - s} sum_n a(n) w2(n) n^{-(k-s)} V_{2,k-s}(n y / Q)
// with Q = N(level) q^2, w1 = chi and w2 = W(chi) conj(chi) for a single
// character (or their Galois averages).

struct AFEConfig {
  double y = 1.0;
  double tol = 1e-13;  // relative truncation target
};

struct LValueResult {
  cplx value;           // L(s, f x chi)
  cplx lambda;          // Gamma_F(s) L(s, f x chi)
  double error_estimate = 0;
  double y = 1;
  size_t terms1 = 0, terms2 = 0;
  std::string label;
  cplx sum1, sum2;      // the two pieces, already divided by Gamma_F(s)
};

/// Precomputed V tables for one (f, s, y, Q): shared by every character of
/// the same conductor.
class AFETables {
 public:
  AFETables(const NewformData& f, const GammaFactor& gf, const SmoothingKernel& ker, double s, double Q,
            const AFEConfig& cfg)
      : s_(s), Q_(Q), y_(cfg.y), k_(f.k()) {
    CutoffFunction v1(gf, ker, 1, s), v2(gf, ker, 2, k_ - s);
    gamma_s_ = v1.gamma_s();
    double e = (k_ - 1) / 2.0 + f.theta;
    auto fill = [&](const CutoffFunction& V, double scale, double sexp, std::vector<double>& out,
                     double& tail) {
      out.assign(1, 0.0);
      double ref = std::abs(gamma_s_);
      for (size_t n = 1;; ++n) {
        if (n > f.max_n())
          throw InputError("coefficient table too short for the AFE cutoff (need more than " +
                           std::to_string(f.max_n()) + " terms)");
        double x = static_cast<double>(n) * scale;
        double v = V(x);
        out.push_back(v);
        double ln = std::log(static_cast<double>(n));
        // envelope of the remaining terms: d(n) ~ (1 + log n)^2 and n more terms of this size
        double env = std::abs(v) * std::exp((e - sexp) * ln) * (1 + ln) * (1 + ln) * static_cast<double>(n);
        if (x > 1.0 && env < cfg.tol * ref) {
          tail = env;
          break;
        }
      }
    };
    fill(v1, 1.0 / y_, s, V1_, tail1_);
    fill(v2, y_ / Q_, k_ - s, V2_, tail2_);
    dual_scale_ = std::pow(Q_, k_ / 2.0 - s);
  }

  size_t terms1() const { return V1_.size() - 1; }
  size_t terms2() const { return V2_.size() - 1; }
  double gamma_s() const { return gamma_s_; }
  double y() const { return y_; }

  /// Evaluate with weights w1(n), w2(n) (w2 already containing W(chi)).
  LValueResult evaluate(const NewformData& f, const std::function<cplx(size_t)>& w1,
                        const std::function<cplx(size_t)>& w2, cplx C_eta) const {
    LValueResult r;
    cplx a1 = 0, a2 = 0;
    double abs1 = 0, abs2 = 0;
    for (size_t n = 1; n < V1_.size(); ++n) {
      if (f.coeff[n] == 0) continue;
      cplx w = w1(n);
      if (w == 0.0) continue;
      cplx t = f.coeff[n] * w * std::pow(static_cast<double>(n), -s_) * V1_[n];
      a1 += t;
      abs1 += std::abs(t);
    }
    for (size_t n = 1; n < V2_.size(); ++n) {
      if (f.coeff[n] == 0) continue;
      cplx w = w2(n);
      if (w == 0.0) continue;
      cplx t = f.coeff[n] * w * std::pow(static_cast<double>(n), -(k_ - s_)) * V2_[n];
      a2 += t;
      abs2 += std::abs(t);
    }
    a2 *= C_eta * dual_scale_;
    r.lambda = a1 + a2;
    r.value = r.lambda / gamma_s_;
    r.sum1 = a1 / gamma_s_;
    r.sum2 = a2 / gamma_s_;
    r.y = y_;
    r.terms1 = terms1();
    r.terms2 = terms2();
    r.error_estimate =
        (tail1_ + std::abs(C_eta) * dual_scale_ * tail2_ + 1e-15 * (abs1 + dual_scale_ * abs2)) / std::abs(gamma_s_);
    return r;
  }

 private:
  double s_, Q_, y_;
  int k_;
  double gamma_s_ = 1;
  double dual_scale_ = 1;
  double tail1_ = 0, tail2_ = 0;
  std::vector<double> V1_, V2_;
};

/// Values chi((n)) for n mod q, as complex numbers (0 off the units).
struct CharTable {
  long long q = 1;
  std::vector<cplx> values{1.0};
  std::vector<ExactRootOfUnity> exact{ExactRootOfUnity{}};
  std::vector<bool> unit{true};

  cplx operator()(size_t n) const { return values[n % q]; }
};

inline CharTable char_table(const HeckeCharacter& chi) {
  CharTable t;
  const auto& g = *chi.rcg;
  if (chi.conductor == 0) return t;
  t.q = g.modulus;
  t.values.assign(t.q, 0.0);
  t.exact.assign(t.q, ExactRootOfUnity{});
  t.unit.assign(t.q, false);
  long long x = 1;
  for (long long k = 0; k < g.phi; ++k) {
    auto v = chi.eval(g.group.from_generators({Int(k)}));
    t.values[x] = v.value();
    t.exact[x] = v;
    t.unit[x] = true;
    x = mulmod(x, g.root, g.modulus);
  }
  return t;
}

/// The twist context: conductor size q = p^c and root number W(chi).
struct TwistData {
  CharTable table;
  double q = 1;
  cplx W = 1.0;
  std::string label = "trivial";
};

inline TwistData twist_data(const GaussContext& ctx, const HeckeCharacter& chi) {
  TwistData d;
  d.table = char_table(chi);
  d.q = std::pow(static_cast<double>(chi.rcg->p), chi.conductor);
  d.W = root_number_W(ctx, local_component(chi));
  d.label = chi.label();
  return d;
}

inline TwistData trivial_twist() { return {}; }

inline void require_q(const NumberFieldData& nf) {
  if (nf.degree != 1) throw Unsupported("series evaluation is implemented over Q only");
}

/// L(s, f x chi) through the approximate functional equation.
inline LValueResult afe_lvalue(const NewformData& f, const GammaFactor& gf, const SmoothingKernel& ker,
                               const TwistData& tw, double s, const AFEConfig& cfg, cplx C) {
  if (f.level_norm % std::max<long long>(1, static_cast<long long>(std::llround(tw.q))) == 0 && tw.q > 1)
    throw InputError("conductor of the twist is not coprime to the level");
  double Q = static_cast<double>(f.level_norm) * tw.q * tw.q;
  AFETables tab(f, gf, ker, s, Q, cfg);
  auto w1 = [&](size_t n) { return tw.table(n); };
  auto w2 = [&](size_t n) { return tw.W * std::conj(tw.table(n)); };
  auto r = tab.evaluate(f, w1, w2, C * f.eta);
  r.label = tw.label;
  return r;
}

/// Truncated Dirichlet series sum a(n) chi(n) n^{-s} for s > (k+2)/2 + margin,
/// with a tail bound from d(n) n^{(k-1)/2 + theta}.
struct SeriesResult {
  cplx value;
  double tail_bound = 0;
  size_t terms = 0;
};

inline SeriesResult direct_series(const NewformData& f, const CharTable& chi, double s, size_t terms = 0,
                                  double margin = 0.25) {
  double edge = (f.k() + 2) / 2.0;
  if (!(s > edge + margin))
    throw InputError("direct series needs s > " + std::to_string(edge + margin) + " (got " + std::to_string(s) + ")");
  size_t M = terms ? std::min(terms, f.max_n()) : f.max_n();
  SeriesResult r;
  r.value = 0;
  for (size_t n = M; n >= 1; --n) r.value += f.coeff[n] * chi(n) * std::pow(static_cast<double>(n), -s);
  double alpha = s - (f.k() - 1) / 2.0 - f.theta;
  double Mm = static_cast<double>(M);
  // partial summation with sum_{n <= x} d(n) <= x (log x + 1)
  r.tail_bound = alpha * ((std::log(Mm) + 1) * std::pow(Mm, 1 - alpha) / (alpha - 1) +
                          std::pow(Mm, 1 - alpha) / ((alpha - 1) * (alpha - 1)));
  r.terms = M;
  return r;
}

/// a-window for y = N(p)^{a n}: ((2 theta + 1/2)/(theta + 1/2), (1 + 1/|Delta|)/(theta + 1/2)).
struct ExponentWindow {
  double a_min, a_max;
  bool empty() const { return a_min >= a_max; }
  bool contains(double a) const { return a > a_min && a < a_max; }
};

inline ExponentWindow exponent_window(double theta, long long delta_order) {
  if (!(theta >= 0 && theta < 0.5)) throw InputError("theta must lie in [0, 1/2)");
  if (delta_order < 1) throw InputError("|Delta| must be positive");
  return {(2 * theta + 0.5) / (theta + 0.5), (1 + 1.0 / static_cast<double>(delta_order)) / (theta + 0.5)};
}

// ---------------------------------------------------------------------------
// Galois-averaged central value.

struct LavResult {
  cplx route_a;                  // mean of the individual AFE values
  cplx route_b;                  // averaged-coefficient AFE
  double cross_gap = 0;          // |a - b| / |a|
  cplx main_term;                // V_{1,k/2}(1/y) / Gamma_F(k/2)
  cplx dual_part;                // V_2 piece of route b
  double error_estimate = 0;
  std::vector<LValueResult> individual;
  size_t orbit_size = 0;
  double y = 1;
  double q = 1;
};

inline LavResult lav(const NewformData& f, const GammaFactor& gf, const SmoothingKernel& ker, const GaussContext& ctx,
                     const HeckeCharacter& psi, int n0, const AFEConfig& cfg, cplx C) {
  LavResult out;
  double s = f.k() / 2.0;
  out.q = std::pow(static_cast<double>(psi.rcg->p), psi.conductor);
  double Q = static_cast<double>(f.level_norm) * out.q * out.q;
  out.y = cfg.y;
  AFETables tab(f, gf, ker, s, Q, cfg);
  cplx Ceta = C * f.eta;

  auto orbit = galois_orbit(psi, n0);
  out.orbit_size = orbit.size();
  cplx mean = 0;
  for (const auto& chi : orbit) {
    auto tw = twist_data(ctx, chi);
    auto r = tab.evaluate(f, [&](size_t n) { return tw.table(n); },
                          [&](size_t n) { return tw.W * std::conj(tw.table(n)); }, Ceta);
    r.label = tw.label;
    mean += r.value;
    out.error_estimate = std::max(out.error_estimate, r.error_estimate);
    out.individual.push_back(r);
  }
  out.route_a = mean / static_cast<double>(orbit.size());

  // route b: averaged coefficients, exact for the first sum
  long long mod_q = psi.conductor == 0 ? 1 : psi.rcg->modulus;
  std::vector<cplx> avg1(mod_q, 0.0), avg2(mod_q, 0.0);
  auto ws = orbit_root_numbers(ctx, psi, n0);
  for (long long x = 0; x < mod_q; ++x) {
    if (mod_q > 1 && x % psi.rcg->p == 0) continue;
    long long xr = mod_q == 1 ? 1 : x;
    avg1[x] = average_char_residue(psi, n0, xr).value;
    avg2[x] = average_iota_residue(psi, n0, xr, ws).value;
  }
  auto rb = tab.evaluate(f, [&](size_t n) { return avg1[n % mod_q]; }, [&](size_t n) { return avg2[n % mod_q]; },
                         Ceta);
  out.route_b = rb.value;
  out.dual_part = rb.sum2;
  out.cross_gap = std::abs(out.route_a - out.route_b) / std::max(std::abs(out.route_a), 1e-300);
  CutoffFunction v1(gf, ker, 1, s);
  out.main_term = v1(1.0 / cfg.y) / v1.gamma_s();
  return out;
}

}  // namespace lav

#endif  // LAV_LSERIES_HPP
