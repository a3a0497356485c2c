#include "lav/lseries.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace lav;

namespace {

const NumberFieldData& Qf() {
  static NumberFieldData q = nf_load(rationals_document());
  return q;
}

const NewformData& Delta() {
  static NewformData f = builtin_delta(120000);
  return f;
}

nlohmann::json read(const std::string& name) {
  std::ifstream in(std::string(LAV_DATA_DIR) + "/forms/" + name);
  return nlohmann::json::parse(in);
}

struct Env {
  GammaFactor gf{Qf(), Delta().weights};
  SmoothingKernel ker;
  cplx C = parity_and_constant(1, 0, Delta().weights).C;
};

const Env& env() {
  static Env e;
  return e;
}

}  // namespace

TEST(Coefficients, TauKnownValuesAndHeckeRelations) {
  const auto& t = Delta().exact;
  std::vector<long long> known{1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920};
  for (size_t n = 1; n <= known.size(); ++n) EXPECT_EQ(t[n], Int(known[n - 1]));
  for (long long m = 2; m < 300; ++m)
    for (long long n = 2; n < 300; ++n)
      if (std::gcd(m, n) == 1) EXPECT_EQ(t[m * n], t[m] * t[n]);
  for (long long p : {2LL, 3LL, 5LL, 7LL, 11LL, 101LL}) {
    Int p11 = 1;
    for (int i = 0; i < 11; ++i) p11 *= p;
    EXPECT_EQ(t[p * p], t[p] * t[p] - p11);
  }
  EXPECT_EQ(ramanujan_exact_tau(t, 3000), 0);
  EXPECT_THROW(tau_table(2000000), InputError);
}

TEST(Coefficients, NewformDocuments) {
  auto f = newform_load(read("delta.json"), 1999);
  for (size_t n = 1; n <= 1999; ++n) EXPECT_NEAR(f.coeff[n], Delta().coeff[n], 1e-12 * std::abs(Delta().coeff[n]));
  EXPECT_NEAR(std::abs(f.eta - Delta().eta), 0, 1e-15);
  try {
    newform_load(read("delta_corrupted.json"), 1999);
    FAIL() << "corrupted table accepted";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("(97)"), std::string::npos);
  }
  auto doc = read("delta.json");
  doc["rows"].push_back({"4", "1", "0"});  // tau(4) = -1472
  EXPECT_THROW(newform_load(doc, 100), InputError);
  doc = read("delta.json");
  doc["rows"].erase(doc["rows"].begin() + 3);  // drop p = 7
  EXPECT_THROW(newform_load(doc, 100), InputError);
  doc = read("delta.json");
  doc["nebentypus"] = {1, 2};
  EXPECT_THROW(newform_load(doc, 100), Unsupported);
  doc = read("delta.json");
  doc["field_label"] = "Q(sqrt2)";
  EXPECT_THROW(newform_load(doc, 100), Unsupported);
}

TEST(GammaFactor, ParityAndScaling) {
  auto par = parity_and_constant(1, 0, Delta().weights);
  EXPECT_TRUE(par.ok);
  EXPECT_NEAR(std::abs(par.C - cplx(-1, 0)), 0, 1e-15);
  auto rq = parity_and_constant(2, 0, {{2, 2}, {0, 0}, {}});
  EXPECT_TRUE(rq.ok);
  EXPECT_NEAR(std::abs(rq.C - cplx(1, 0)), 0, 1e-15);
  // over Q the factor is Gamma(s) (2 pi)^{-s} up to a constant
  const auto& gf = env().gf;
  double c6 = gf.value(6.0).real() / (120.0 * std::pow(kTwoPi, -6));
  for (double s : {5.5, 7.0, 8.25}) {
    double ref = std::exp(std::lgamma(s)) * std::pow(kTwoPi, -s);
    EXPECT_NEAR(gf.value(s).real() / ref, c6, 1e-12 * c6);
  }
}

TEST(GammaFactor, UnitSignIndex) {
  // sign vectors of the unit generators: -1 alone over Q; -1 and 1 + sqrt2 (norm -1) over Q(sqrt2)
  EXPECT_EQ(env().gf.unit_index(), 2);
  GammaFactor k(nf_load(sqrt2_document()), {{2, 2}, {0, 0}, {}});
  EXPECT_EQ(k.unit_index(), 4);
}

TEST(Special, LogGamma) {
  for (double x : {0.3, 1.0, 2.5, 7.0, 30.5}) EXPECT_NEAR(lgamma_r(x), std::lgamma(x), 1e-12);
  for (cplx z : {cplx(0.5, 3), cplx(-2.5, 1), cplx(4, -7)}) {
    cplx lhs = lgamma_c(z + 1.0), rhs = lgamma_c(z) + std::log(z);
    cplx d = lhs - rhs;
    d -= cplx(0, kTwoPi * std::round(d.imag() / kTwoPi));
    EXPECT_NEAR(std::abs(d), 0, 1e-12);
  }
}

TEST(Cutoff, LimitsAndQuadratureStability) {
  CutoffFunction V(env().gf, env().ker, 1, 6.0);
  EXPECT_NEAR(env().ker.kappa(0.0).real(), 1, 1e-14);
  EXPECT_NEAR(V(1e-6) / V.gamma_s(), 1, 1e-9);
  double prev = 1e300;
  for (double x : {0.5, 1.0, 2.0, 5.0, 10.0, 25.0}) {
    double v = V(x);
    EXPECT_LT(v, prev);
    prev = v;
    EXPECT_LT(V.step_halving_gap(x), 1e-10 * V.gamma_s());
  }
  EXPECT_LT(V(25.0) / V.gamma_s(), 1e-20);
}

TEST(Series, DirectSeriesConvergence) {
  const auto& f = Delta();
  auto a = direct_series(f, CharTable{}, 9.0, 50000), b = direct_series(f, CharTable{}, 9.0, 100000);
  EXPECT_LT(std::abs(a.value - b.value), a.tail_bound);
  EXPECT_LT(b.tail_bound, 1e-10);
  EXPECT_THROW(direct_series(f, CharTable{}, 6.0), InputError);
}

TEST(AFE, MatchesDirectSeriesAndIsYInvariant) {
  const auto& f = Delta();
  const auto& e = env();
  auto P = primes_above(Qf(), 5)[0];
  auto g = rcg_build(Qf(), 5, P, 2);
  GaussContext ctx(Qf(), 5, P);
  std::vector<TwistData> tws{trivial_twist()};
  for (const auto& chi : char_enumerate(g, 2, true))
    if (tws.size() < 3) tws.push_back(twist_data(ctx, chi));
  for (const auto& tw : tws) {
    AFEConfig cfg;
    auto a = afe_lvalue(f, e.gf, e.ker, tw, 8.0, cfg, e.C);
    auto d = direct_series(f, tw.table, 8.0, 100000);
    EXPECT_LT(std::abs(a.value - d.value), 1e-8 * std::abs(d.value));
    double y0 = tw.q;
    cfg.y = y0;
    auto ref = afe_lvalue(f, e.gf, e.ker, tw, 6.0, cfg, e.C);
    for (double s : {0.5, 0.7, 1.3, 2.0}) {
      cfg.y = s * y0;
      auto r = afe_lvalue(f, e.gf, e.ker, tw, 6.0, cfg, e.C);
      EXPECT_LT(std::abs(r.value - ref.value), std::max(1e-10, 10 * (r.error_estimate + ref.error_estimate)));
    }
  }
  // L(6, Delta) from the literature: 0.792122838...
  AFEConfig cfg;
  EXPECT_NEAR(afe_lvalue(f, e.gf, e.ker, trivial_twist(), 6.0, cfg, e.C).value.real(), 0.7921228386, 1e-9);
}

TEST(AFE, FunctionalEquationResidual) {
  const auto& f = Delta();
  const auto& e = env();
  AFEConfig a, b;
  b.y = 3.0;
  auto l1 = afe_lvalue(f, e.gf, e.ker, trivial_twist(), 5.5, a, e.C).lambda;
  auto l2 = afe_lvalue(f, e.gf, e.ker, trivial_twist(), 6.5, b, e.C).lambda;
  EXPECT_LT(std::abs(l1 - e.C * f.eta * l2), 1e-8 * std::abs(l1));
}

TEST(AFE, TooShortTableIsReported) {
  auto f = builtin_delta(500);
  AFEConfig cfg;
  cfg.y = 1000;
  EXPECT_THROW(afe_lvalue(f, env().gf, env().ker, trivial_twist(), 6.0, cfg, env().C), InputError);
}

TEST(ExponentWindow, Endpoints) {
  auto w = exponent_window(0, 2);
  EXPECT_DOUBLE_EQ(w.a_min, 1);
  EXPECT_DOUBLE_EQ(w.a_max, 3);
  EXPECT_TRUE(w.contains(2));
  auto v = exponent_window(7.0 / 64, 2);
  EXPECT_NEAR(v.a_min, (14.0 / 64 + 0.5) / (7.0 / 64 + 0.5), 1e-15);
  EXPECT_NEAR(v.a_min, 1.1795, 1e-4);
  EXPECT_NEAR(v.a_max, 96.0 / 39, 1e-14);
  EXPECT_THROW(exponent_window(0.5, 2), InputError);
}

TEST(Lav, RoutesAgreeAndOrbitChoiceIsIrrelevant) {
  const auto& f = Delta();
  const auto& e = env();
  auto P = primes_above(Qf(), 5)[0];
  GaussContext ctx(Qf(), 5, P);
  AFEConfig cfg;
  cfg.y = 25;
  auto g1 = rcg_build(Qf(), 5, P, 1);
  auto t = lav::lav(f, e.gf, e.ker, ctx, trivial_character(g1), 0, cfg, e.C);
  EXPECT_EQ(t.orbit_size, 1u);
  EXPECT_NEAR(t.route_a.real(), 0.7921228386, 1e-9);
  auto g = rcg_build(Qf(), 5, P, 2);
  auto psi = char_enumerate(g, 2, true).front();
  auto r = lav::lav(f, e.gf, e.ker, ctx, psi, 0, cfg, e.C);
  EXPECT_LT(r.cross_gap, 1e-7);
  EXPECT_EQ(r.orbit_size, 4u);
  EXPECT_LT(std::abs(r.route_a.imag()), 1e-12);
  for (long long s : {2, 3, 4}) {
    auto o = lav::lav(f, e.gf, e.ker, ctx, psi.pow(s), 0, cfg, e.C);
    EXPECT_NEAR(std::abs(o.route_a - r.route_a), 0, 1e-12);
  }
}
