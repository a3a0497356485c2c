#ifndef LAV_VERIFY_HPP
#define LAV_VERIFY_HPP

// The acceptance suite: one result per criterion, each computed against a
// brute-force or closed-form reference where one exists.

#include "lav/experiment.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace lav {

struct CriterionResult {
  CriterionResult(int i = 0, std::string n = {}) : id(i), name(std::move(n)) {}

  int id = 0;
  std::string name;
  bool pass = false;
  bool known_deviation = false;  // failure that is a property of the statement, not of the code
  std::string detail;
  double seconds = 0;
};

struct SuiteOptions {
  bool fast = false;
  std::string data_dir = "data";
  unsigned threads = 1;
};

namespace detail {

inline std::string fmt(double v, int prec = 3) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

/// Sum_{x mod q, p not | x} phi(x) e(-x / q) over Q, with the character
/// values built by walking powers of the root.
inline cplx brute_gauss_q(const LocalCharacter& phi) {
  std::vector<cplx> val(static_cast<size_t>(phi.modulus), 0.0);
  long long x = 1;
  for (long long k = 0; k < phi.phi; ++k) {
    val[x] = std::polar(1.0, kTwoPi * static_cast<double>(mulmod(phi.j, k, phi.phi)) / static_cast<double>(phi.phi));
    x = mulmod(x, phi.root, phi.modulus);
  }
  cplx s = 0;
  for (long long y = 1; y < phi.modulus; ++y)
    s += val[y] * std::polar(1.0, -kTwoPi * static_cast<double>(y) / static_cast<double>(phi.modulus));
  return s;
}

inline IntegralIdeal prime_containing(const NumberFieldData& nf, long long p, const FieldElement& g) {
  for (const auto& P : primes_above(nf, p))
    if (nf.ideal_contains(P, g)) return P;
  throw InputError("no prime above p contains the given generator");
}

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

}  // namespace detail

/// Shared inputs: the two shipped fields and the tau table.
struct SuiteData {
  NumberFieldData Q, K;
  IntegralIdeal P5, P7K;  // (5) in Q and (3 + sqrt 2) in Q(sqrt 2)
  NewformData delta;
  cplx C;

  explicit SuiteData(const SuiteOptions& o) {
    Q = nf_load(rationals_document());
    K = nf_load(sqrt2_document());
    P5 = primes_above(Q, 5)[0];
    P7K = detail::prime_containing(K, 7, K.from_power_basis({Rat(3), Rat(1)}));
    ExperimentConfig cfg;
    cfg.n_max = o.fast ? 2 : 3;
    delta = builtin_delta(std::max<size_t>(experiment_table_size(cfg), 120000));
    C = parity_and_constant(1, 0, delta.weights).C;
  }
};

// 1 ------------------------------------------------------------------------
inline CriterionResult criterion_gauss_modulus(const SuiteData& d) {
  detail::Timer t;
  CriterionResult r{1, "Gauss-sum modulus"};
  double worst = 0, worst_oracle = 0;
  size_t count = 0;
  for (long long p : {3, 5, 7}) {
    GaussContext ctx(d.Q, p, primes_above(d.Q, p)[0]);
    for (int c = 1; c <= 3; ++c)
      for (const auto& phi : local_characters(p, c)) {
        cplx g = ctx.gauss_sum(phi, 1, false).value;
        worst = std::max(worst, std::abs(std::norm(g) - static_cast<double>(phi.modulus)));
        worst_oracle = std::max(worst_oracle, std::abs(g - detail::brute_gauss_q(phi)));
        ++count;
      }
  }
  GaussContext kc(d.K, 7, d.P7K);
  size_t kcount = 0;
  for (int c = 1; c <= 2 && kcount < 10; ++c)
    for (const auto& phi : local_characters(7, c)) {
      if (kcount == 10) break;
      cplx g = kc.gauss_sum(phi, 1, false).value;
      worst = std::max(worst, std::abs(std::norm(g) - static_cast<double>(phi.modulus)));
      ++kcount;
    }
  r.seconds = t.seconds();
  r.pass = worst < 1e-9 && worst_oracle < 1e-8 && r.seconds < 30;
  r.detail = std::to_string(count) + " characters over Q, " + std::to_string(kcount) +
             " over Q(sqrt2); max ||G|^2 - N(c)| = " + detail::fmt(worst) +
             ", max |G - brute force| = " + detail::fmt(worst_oracle);
  return r;
}

// 2 ------------------------------------------------------------------------
inline CriterionResult criterion_gauss_identities(const SuiteData& d) {
  detail::Timer t;
  CriterionResult r{2, "Gauss-sum identities"};
  std::mt19937_64 rng(20240607);
  size_t exact_ok = 0, exact_total = 0;
  double worst_conj = 0;
  auto run = [&](const NumberFieldData& nf, long long p, const IntegralIdeal& P, int cmax, bool field_elements) {
    GaussContext ctx(nf, p, P);
    for (int c = 1; c <= cmax; ++c)
      for (const auto& phi : local_characters(p, c)) {
        auto g = ctx.gauss_sum(phi, 1, true);
        long long big = phi.modulus * (p - 1);
        auto iso = split_local_iso(nf, p, P, c);
        for (int i = 0; i < 50; ++i) {
          FieldElement a;
          do {
            if (field_elements)
              a = nf.from_power_basis({Rat(static_cast<long long>(rng() % 2001) - 1000),
                                       Rat(static_cast<long long>(rng() % 2001) - 1000)});
            else
              a = nf.from_int(static_cast<long long>(rng() % 1000000) + 1);
          } while (iso.reduce(a) % p == 0);
          auto lhs = ctx.gauss_sum(phi, a, true).exact;
          auto v = phi.at(iso.reduce(a)).conj();
          auto rhs = g.exact.times_root(v.num * (big / v.den));
          exact_ok += lhs == rhs;
          ++exact_total;
        }
        cplx gc = ctx.gauss_sum(phi.conj(), 1, false).value;
        cplx expect = phi.at(-1).value() * static_cast<double>(phi.modulus);
        worst_conj = std::max(worst_conj, std::abs(gc * g.value - expect));
      }
  };
  run(d.Q, 3, primes_above(d.Q, 3)[0], 3, false);
  run(d.Q, 5, d.P5, 2, false);
  run(d.Q, 7, primes_above(d.Q, 7)[0], 2, false);
  run(d.K, 7, d.P7K, 1, true);
  r.pass = exact_ok == exact_total && worst_conj < 1e-9;
  r.detail = "G(chi, a) = conj(chi(a)) G(chi) exactly in " + std::to_string(exact_ok) + "/" +
             std::to_string(exact_total) + " cases; max |G(conj chi) G(chi) - chi(-1) N(c)| = " +
             detail::fmt(worst_conj);
  r.seconds = t.seconds();
  return r;
}

// 3 ------------------------------------------------------------------------
inline CriterionResult criterion_galois_support(const SuiteData& d) {
  detail::Timer t;
  CriterionResult r{3, "Galois-average support"};
  std::ostringstream os;
  bool all_ok = true;
  for (int n0 : {0, 1}) {
    size_t checked = 0, mid_bad = 0, low_bad = 0, exact_bad = 0, oracle_bad = 0, layer_bad = 0;
    for (long long p : {3, 5, 7}) {
      auto P = primes_above(d.Q, p)[0];
      for (int n = 1; ipow(p, n) <= 625; ++n) {
        auto g = rcg_build(d.Q, p, P, n);
        for (const auto& chi : char_enumerate(g, n, true)) {
          auto ts = galois_exponents(p, chi.order, n0);
          for (long long x = 1; x < g.modulus; ++x) {
            if (x % p == 0) continue;
            auto av = average_char_residue(chi, n0, x);
            // reference: the orbit mean in floating point
            auto v = *chi.eval_residue(x);
            cplx ref = 0;
            for (long long s : ts)
              ref += std::polar(1.0, kTwoPi * static_cast<double>(mulmod(s, v.num, v.den)) / static_cast<double>(v.den));
            ref /= static_cast<double>(ts.size());
            oracle_bad += std::abs(ref - av.value) > 1e-9;
            bool nz = !av.exact.is_zero();
            bool cor = average_support_residue(chi, n0, x, SupportVariant::kOrderN0Plus1);
            bool low = average_support_residue(chi, n0, x, SupportVariant::kOrderN0);
            bool ex = average_support_residue(chi, n0, x, SupportVariant::kExact);
            mid_bad += nz != cor;
            exact_bad += nz != ex;
            if (nz != low) {
              ++low_bad;
              layer_bad += v.order() != ipow(p, n0 + 1);
            }
            ++checked;
          }
        }
      }
    }
    bool ok = oracle_bad == 0 && mid_bad == 0 && layer_bad == 0;
    all_ok = all_ok && ok;
    os << "n0=" << n0 << ": " << checked << " pairs, reference mismatches " << oracle_bad
       << ", order <= p^{n0+1} predicate mismatches " << mid_bad << ", order <= p^{n0} predicate mismatches " << low_bad
       << " (outside the order p^{n0+1} layer: " << layer_bad << "), order <= p^{max(n0,1)} predicate mismatches " << exact_bad
       << (n0 == 0 ? "; " : "");
    if (n0 == 1 && mid_bad > 0)
      os << "; at n0=1 the orbit t = 1 mod p sums a primitive p^2-th root over a full coset of mu_p, "
            "which vanishes, so the support is order <= p^{max(n0,1)}";
  }
  r.pass = all_ok;
  r.known_deviation = !all_ok;
  r.detail = os.str();
  r.seconds = t.seconds();
  return r;
}

// 4 ------------------------------------------------------------------------
inline CriterionResult criterion_root_numbers(const SuiteData& d) {
  detail::Timer t;
  CriterionResult r{4, "Root numbers"};
  double worst = 0;
  size_t count = 0;
  auto absdev = [&](const GaussContext& ctx, const LocalCharacter& phi) {
    cplx w = root_number_W(ctx, phi, 1.0, 1.0);  // measure, do not throw
    worst = std::max(worst, std::abs(std::abs(w) - 1.0));
    ++count;
  };
  for (long long p : {3, 5, 7}) {
    GaussContext ctx(d.Q, p, primes_above(d.Q, p)[0]);
    for (int c = 1; c <= 3; ++c)
      for (const auto& phi : local_characters(p, c)) absdev(ctx, phi);
  }
  GaussContext kc(d.K, 7, d.P7K);
  for (int c = 1; c <= 2; ++c)
    for (const auto& phi : local_characters(7, c)) absdev(kc, phi);
  GaussContext c5(d.Q, 5, d.P5);
  for (int n = 2; n <= 3; ++n) {
    auto g = rcg_build(d.Q, 5, d.P5, n);
    for (const auto& chi : galois_orbit(char_enumerate(g, n, true).front(), 0)) absdev(c5, local_component(chi));
  }
  r.pass = worst < 1e-9;
  r.detail = std::to_string(count) + " characters, max ||W| - 1| = " + detail::fmt(worst);
  r.seconds = t.seconds();
  return r;
}

// 5 ------------------------------------------------------------------------
inline CriterionResult criterion_kloosterman(const SuiteData& d) {
  detail::Timer t;
  CriterionResult r{5, "Kloosterman envelope"};
  auto rep = kloosterman_bound_report(d.Q, 5, d.P5, 0, {1, 2, 3}, 4.0);
  std::ostringstream os;
  for (const auto& row : rep.rows)
    os << "n=" << row.n << " max|psi_av^iota| = " << detail::fmt(row.max_abs, 4) << " C = " << detail::fmt(row.constant, 4)
       << "; ";
  os << "spread " << detail::fmt(rep.spread, 4) << " (limit 4)";
  r.pass = rep.stable;
  r.detail = os.str();
  r.seconds = t.seconds();
  return r;
}

// 6 ------------------------------------------------------------------------
inline CriterionResult criterion_cutoff(const SuiteData& d) {
  detail::Timer t;
  CriterionResult r{6, "V-function asymptotics"};
  GammaFactor gf(d.Q, d.delta.weights);
  SmoothingKernel ker;
  CutoffFunction V(gf, ker, 1, 6.0);
  double G = V.gamma_s();
  std::ostringstream os;
  std::vector<double> cs;
  double gap = 0;
  for (double x : {1e-2, 1e-4, 1e-6}) {
    double dev = std::abs(V(x) / G - 1);
    cs.push_back(dev / std::sqrt(x));
    gap = std::max(gap, V.step_halving_gap(x) / G);
    os << "x=" << x << " |V/G - 1|/x^(1/2) = " << detail::fmt(cs.back()) << "; ";
  }
  bool small_ok = cs[1] <= 2 * cs[0] + 1e-12 && cs[2] <= 2 * cs[0] + 1e-12;
  std::vector<double> big;
  for (double x : {10.0, 25.0, 50.0}) {
    big.push_back(std::abs(V(x) / G) * x * x * x);
    gap = std::max(gap, V.step_halving_gap(x) / G);
    os << "x=" << x << " |V/G| x^3 = " << detail::fmt(big.back()) << "; ";
  }
  bool large_ok = big[1] < big[0] && big[2] < big[1];
  os << "max step-halving gap " << detail::fmt(gap);
  r.pass = small_ok && large_ok && gap < 1e-10;
  r.detail = os.str();
  r.seconds = t.seconds();
  return r;
}

// 7 ------------------------------------------------------------------------
inline CriterionResult criterion_afe_oracle(const SuiteData& d) {
  detail::Timer t;
  CriterionResult r{7, "AFE oracle equivalence"};
  GammaFactor gf(d.Q, d.delta.weights);
  SmoothingKernel ker;
  GaussContext ctx(d.Q, 5, d.P5);
  auto g = rcg_build(d.Q, 5, d.P5, 2);
  std::vector<TwistData> tws{trivial_twist()};
  for (const auto& chi : char_enumerate(g, 2, true)) {
    if (chi.order != 5 || tws.size() == 3) continue;
    tws.push_back(twist_data(ctx, chi));
  }
  double worst_direct = 0, worst_y = 0;
  for (const auto& tw : tws) {
    AFEConfig cfg;
    auto a = afe_lvalue(d.delta, gf, ker, tw, 8.0, cfg, d.C);
    auto s = direct_series(d.delta, tw.table, 8.0, 100000);
    worst_direct = std::max(worst_direct, std::abs(a.value - s.value) / std::abs(s.value));
    double y0 = std::sqrt(tw.q * tw.q);
    std::vector<cplx> vals;
    for (double f : {0.5, 1.0, 2.0}) {
      cfg.y = f * y0;
      vals.push_back(afe_lvalue(d.delta, gf, ker, tw, 6.0, cfg, d.C).value);
    }
    for (const auto& v : vals) worst_y = std::max(worst_y, std::abs(v - vals[1]) / std::abs(vals[1]));
  }
  r.pass = tws.size() == 3 && worst_direct < 1e-8 && worst_y < 1e-8;
  r.detail = std::to_string(tws.size()) + " characters; max rel |AFE - direct| at s=8 = " + detail::fmt(worst_direct) +
             "; max rel y-variation at s=6 = " + detail::fmt(worst_y);
  r.seconds = t.seconds();
  return r;
}

// 8 ------------------------------------------------------------------------
inline CriterionResult criterion_functional_equation(const SuiteData& d) {
  detail::Timer t;
  CriterionResult r{8, "Functional-equation residual"};
  GammaFactor gf(d.Q, d.delta.weights);
  SmoothingKernel ker;
  double k = d.delta.k();
  std::ostringstream os;
  double worst = 0;
  for (double s : {5.5, 6.5}) {
    AFEConfig c1, c2;
    c1.y = 1.0;
    c2.y = 1.7;  // the two sides use different balance points
    auto L1 = afe_lvalue(d.delta, gf, ker, trivial_twist(), s, c1, d.C).lambda;
    auto L2 = afe_lvalue(d.delta, gf, ker, trivial_twist(), k - s, c2, d.C).lambda;
    double res = std::abs(L1 - d.C * d.delta.eta * L2) / std::abs(L1);
    worst = std::max(worst, res);
    os << "s=" << s << " residual " << detail::fmt(res) << "; ";
  }
  os << "C = " << detail::fmt(d.C.real()) << ", eta = " << detail::fmt(d.delta.eta.real());
  r.pass = worst < 1e-6;
  r.detail = os.str();
  r.seconds = t.seconds();
  return r;
}

// 9 ------------------------------------------------------------------------
inline CriterionResult criterion_ramanujan(const SuiteData& d, const SuiteOptions& o) {
  detail::Timer t;
  CriterionResult r{9, "Ramanujan bound"};
  long long bad = ramanujan_exact_tau(d.delta.exact, 10000);
  std::string rejected;
  bool good_loads = false;
  try {
    std::ifstream in(o.data_dir + "/forms/delta.json");
    auto f = newform_load(nlohmann::json::parse(in), 1999);
    good_loads = true;
    for (size_t n = 1; n <= f.max_n(); ++n)
      good_loads = good_loads && std::abs(f.coeff[n] - d.delta.coeff[n]) <= 1e-12 * std::abs(d.delta.coeff[n]);
  } catch (const std::exception& e) {
    rejected = std::string("clean table failed: ") + e.what();
  }
  bool corrupted_rejected = false;
  try {
    std::ifstream in(o.data_dir + "/forms/delta_corrupted.json");
    newform_load(nlohmann::json::parse(in), 1999);
  } catch (const InputError& e) {
    std::string m = e.what();
    corrupted_rejected = m.find("Ramanujan") != std::string::npos && m.find("(97)") != std::string::npos;
    rejected = m;
  } catch (const std::exception& e) {
    rejected = e.what();
  }
  r.pass = bad == 0 && good_loads && corrupted_rejected;
  r.detail = std::string("tau(p)^2 <= 4 p^11 for all p <= 10^4: ") + (bad == 0 ? "yes" : "no, p = " + std::to_string(bad)) +
             "; clean table reproduces tau: " + (good_loads ? "yes" : "no") + "; corrupted table: " + rejected;
  r.seconds = t.seconds();
  return r;
}

// 10 -----------------------------------------------------------------------
inline CriterionResult criterion_nonvanishing(const SuiteData& d, const SuiteOptions& o) {
  detail::Timer t;
  CriterionResult r{10, "Non-vanishing experiment"};
  ExperimentConfig cfg;
  cfg.n_max = o.fast ? 2 : 3;
  cfg.threads = o.threads;
  auto rep = run_lav_experiment(d.Q, d.delta, cfg);
  std::ostringstream os;
  bool rows_ok = true;
  for (const auto& row : rep.rows) {
    bool ok = row.error.empty() && row.nonvanishing && row.cross_gap < cfg.cross_tol;
    rows_ok = rows_ok && ok;
    os << "n=" << row.n << " orbit " << row.orbit_size << " L_av = " << detail::fmt(row.lav.real(), 6)
       << " |L_av-1| = " << detail::fmt(row.dev_one, 4) << " min|L| = " << detail::fmt(row.min_abs, 4)
       << " gap(a,b) = " << detail::fmt(row.cross_gap, 2) << (row.error.empty() ? "" : " error: " + row.error)
       << "; ";
  }
  double th = cfg.eps, D = static_cast<double>(rep.delta_order), a = cfg.a;
  bool exps_negative =
      (th - 0.5) / D < 0 && a * (0.5 + th) - (1 + 1 / D) < 0 && (2 * th + 0.5) - a * (th + 0.5) < 0;
  bool window_ok = rep.window.contains(a) && !exponent_window(7.0 / 64, rep.delta_order).empty();
  bool trend = rep.rows.back().dev_one < rep.rows.front().dev_one;
  os << "envelope exponents negative: " << (exps_negative ? "yes" : "no") << "; a inside window ("
     << detail::fmt(rep.window.a_min, 4) << ", " << detail::fmt(rep.window.a_max, 4) << "); trend |L_av-1| at n="
     << rep.rows.back().n << " below n=1: " << (trend ? "yes" : "no");
  if (!o.fast) {
    ExperimentConfig ext = cfg;
    ext.n_min = 4;
    ext.n_max = 5;
    ext.a = 1.2;  // L_av does not depend on y; a smaller y keeps the tables short
    auto e = run_lav_experiment(d.Q, d.delta, ext);
    os << "; beyond the criterion range:";
    for (const auto& row : e.rows)
      os << " n=" << row.n << " |L_av-1| = " << detail::fmt(row.dev_one, 4)
         << (row.error.empty() ? "" : " (" + row.error + ")");
  }
  if (o.fast) os << "; fast mode stops at n = 2, the full criterion compares n = 3 with n = 1";
  os << ". The limit L_av -> 1 is asymptotic and is not reproduced at this scale beyond the listed rows";
  r.pass = rows_ok && exps_negative && window_ok && trend;
  r.known_deviation = rows_ok && exps_negative && window_ok && !trend;
  r.detail = os.str();
  r.seconds = t.seconds();
  return r;
}

// 11 -----------------------------------------------------------------------
inline CriterionResult criterion_lattice(const SuiteData& d) {
  detail::Timer t;
  CriterionResult r{11, "Lattice counts"};
  std::ostringstream os;
  bool ok = true;

  // exact counts against enumeration in a doubled box
  size_t cases = 0, mism = 0;
  for (long long alpha : {1, 2, 3})
    for (int n : {1, 2})
      for (double x : {1.0, 100.0, 1000.0}) {
        auto c = count_progression(d.Q, d.Q.from_int(alpha), d.P5, 5, n, x);
        long long ref = 0, step = alpha * ipow(5, n);
        for (long long b = 1; b <= static_cast<long long>(2 * x); ++b)
          if (b <= x && (b - alpha) % step == 0) ++ref;
        mism += ref != c.count;
        ++cases;
      }
  DomainReducer red(d.K);
  double R = std::exp(2 * red.log_unit()), s2 = std::sqrt(2.0);
  std::vector<FieldElement> alphas{d.K.from_int(1), d.K.from_int(2), d.K.from_power_basis({Rat(1), Rat(1)})};
  for (const auto& alpha : alphas)
    for (int n : {1, 2})
      for (double x : {50.0, 500.0}) {
        auto c = count_progression(d.K, alpha, d.P7K, 7, n, x);
        auto lat = d.K.ideal_mul(d.K.principal(alpha), d.K.ideal_pow(d.P7K, n));
        double B1 = 2 * std::sqrt(R * x), B2 = 2 * std::sqrt(x);
        long long A = static_cast<long long>((B1 + B2) / 2) + 1, Bb = static_cast<long long>((B1 + B2) / (2 * s2)) + 1;
        long long ref = 0;
        for (long long a = -A; a <= A; ++a)
          for (long long b = -Bb; b <= Bb; ++b) {
            FieldElement beta = d.K.from_power_basis({Rat(a), Rat(b)});
            Rat N = abs(d.K.norm(beta));
            if (N == 0 || N > Rat(static_cast<long long>(x))) continue;
            if (!d.K.ideal_contains(lat, d.K.sub(beta, alpha))) continue;
            if (red.in_domain(beta)) ++ref;
          }
        mism += ref != c.count;
        ++cases;
      }
  ok = ok && mism == 0;
  os << "counts vs doubled-box enumeration: " << cases - mism << "/" << cases << " agree; ";

  auto grid = verify_count_bound(d.Q, 5, d.P5, {1, 2, 3}, {10, 100, 1000, 10000});
  ok = ok && grid.stable;
  os << "sup U/max(x/N^n,1) = " << detail::fmt(grid.sup) << " (grid-stable: " << (grid.stable ? "yes" : "no") << "); ";

  // min |N| over (1 + p^n) \ {1} against N(p)^n: bounded below, nondecreasing in n
  auto ratios = [&](const NumberFieldData& nf, const IntegralIdeal& P, long long p, int nmax, bool& mono) {
    std::vector<double> out;
    Rat prev = 0;
    for (int n = 1; n <= nmax; ++n) {
      Rat m = min_norm_coset(nf, P, p, n);
      mono = mono && m >= prev;
      prev = m;
      out.push_back(m.convert_to<double>() / std::pow(static_cast<double>(p), n));
    }
    return out;
  };
  bool mono = true;
  auto rq = ratios(d.Q, d.P5, 5, 4, mono), rk = ratios(d.K, d.P7K, 7, 2, mono);
  double c_min = std::min(*std::min_element(rq.begin(), rq.end()), *std::min_element(rk.begin(), rk.end()));
  ok = ok && mono && c_min >= 0.5;
  os << "min-norm ratios Q:";
  for (double v : rq) os << " " << detail::fmt(v, 4);
  os << " Q(sqrt2):";
  for (double v : rk) os << " " << detail::fmt(v, 4);
  os << " (c = " << detail::fmt(c_min, 4) << ", nondecreasing: " << (mono ? "yes" : "no") << "); ";

  std::vector<double> tr;
  for (int n = 1; n <= 3; ++n) {
    auto g = rcg_build(d.Q, 5, d.P5, n);
    auto rep = torsion_norm_bound(g);
    if (rep.delta_order != 2) ok = false;
    for (const auto& row : rep.rows) tr.push_back(row.ratio);
  }
  bool tors_ok = tr.size() == 3 && *std::min_element(tr.begin(), tr.end()) >= tr.front() / 2;
  ok = ok && tors_ok;
  os << "torsion ratios N(b_n)/N^(n/2):";
  for (double v : tr) os << " " << detail::fmt(v, 4);

  auto dec = build_cones(d.K);
  std::mt19937_64 rng(7);
  size_t uncovered = 0;
  for (int i = 0; i < 10000; ++i) {
    FieldElement x;
    do {
      x = d.K.from_power_basis({Rat(static_cast<long long>(rng() % 2001) - 1000),
                                Rat(static_cast<long long>(rng() % 2001) - 1000)});
    } while (d.K.norm(x) == 0);
    uncovered += !covered_by_cones(d.K, dec, red, x);
  }
  ok = ok && uncovered == 0;
  os << "; cone cover misses on 10^4 samples: " << uncovered << ", coherence " << detail::fmt(dec.cones[0].coherence, 4);
  r.pass = ok;
  r.detail = os.str();
  r.seconds = t.seconds();
  return r;
}

inline std::vector<CriterionResult> run_acceptance(const SuiteOptions& o,
                                                   const std::function<void(const CriterionResult&)>& report = {}) {
  SuiteData d(o);
  std::vector<std::function<CriterionResult()>> jobs{
      [&] { return criterion_gauss_modulus(d); },       [&] { return criterion_gauss_identities(d); },
      [&] { return criterion_galois_support(d); },      [&] { return criterion_root_numbers(d); },
      [&] { return criterion_kloosterman(d); },         [&] { return criterion_cutoff(d); },
      [&] { return criterion_afe_oracle(d); },          [&] { return criterion_functional_equation(d); },
      [&] { return criterion_ramanujan(d, o); },        [&] { return criterion_nonvanishing(d, o); },
      [&] { return criterion_lattice(d); }};
  std::vector<CriterionResult> out;
  for (size_t i = 0; i < jobs.size(); ++i) {
    CriterionResult r;
    try {
      r = jobs[i]();
    } catch (const std::exception& e) {
      r.id = static_cast<int>(i + 1);
      r.name = "criterion " + std::to_string(i + 1);
      r.detail = std::string("exception: ") + e.what();
    }
    if (report) report(r);
    out.push_back(r);
  }
  return out;
}

inline std::string format_result(const CriterionResult& r) {
  std::string tag = r.pass ? "PASS" : (r.known_deviation ? "FAIL (known deviation)" : "FAIL");
  return "[" + tag + "] " + std::to_string(r.id) + ". " + r.name + " (" + detail::fmt(r.seconds, 3) + " s): " + r.detail;
}

}  // namespace lav

#endif  // LAV_VERIFY_HPP
