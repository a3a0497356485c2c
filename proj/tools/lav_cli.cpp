// Command-line front end: twisted central values, Galois averages, Gauss sums,
// lattice counts and the acceptance suite.
//
// Exit codes: 0 ok, 1 verification failure, 2 bad input.

#include "lav/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#ifndef LAV_DATA_DIR
#define LAV_DATA_DIR "data"
#endif

namespace {

using namespace lav;
using json = nlohmann::json;

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string field = "Q";
  std::string form = "delta";
  int precision_bits = 128;
  double tol = 1e-13;
  unsigned threads = 1;
  std::string out;
  std::string data = LAV_DATA_DIR;
};

NumberFieldData load_field(const Globals& g) {
  if (g.precision_bits < 53) throw InputError("--precision-bits must be at least 53");
  if (g.field == "Q") return nf_load(rationals_document(), g.precision_bits);
  if (g.field == "Q_sqrt2" || g.field == "Q(sqrt2)") return nf_load(sqrt2_document(), g.precision_bits);
  return nf_load_file(g.field, g.precision_bits);
}

/// Coefficient table of the requested length (or the longest a document allows).
NewformData load_form(const Globals& g, size_t nmax) {
  if (g.form == "delta") return builtin_delta(std::min<size_t>(nmax, 1000000));
  std::ifstream in(g.form);
  if (!in) throw InputError("cannot open newform document " + g.form);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(std::string("newform document parse error: ") + e.what());
  }
  size_t top = 1;
  if (doc.contains("rows") && doc["rows"].is_array())
    for (const auto& row : doc["rows"])
      if (row.is_array() && !row.empty() && row[0].is_string()) top = std::max<size_t>(top, std::stoull(row[0].get<std::string>()));
  return newform_load(doc, std::min(nmax, top));
}

IntegralIdeal select_prime(const NumberFieldData& nf, long long p, size_t index, const std::string& gen) {
  if (p < 3 || !is_prime(p)) throw InputError("p must be an odd prime");
  if (!gen.empty()) {
    std::vector<Rat> c;
    std::stringstream ss(gen);
    for (std::string tok; std::getline(ss, tok, ',');) c.push_back(parse_rat(tok));
    if (static_cast<int>(c.size()) != nf.degree) throw InputError("--prime-gen needs one coordinate per basis element");
    return detail::prime_containing(nf, p, FieldElement{c});
  }
  auto ps = primes_above(nf, p);
  if (index >= ps.size()) throw InputError("--prime-index out of range");
  return ps[index];
}

FieldElement parse_element(const NumberFieldData& nf, const std::string& s) {
  std::vector<Rat> c;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) c.push_back(parse_rat(tok));
  if (c.size() == 1) return nf.from_rational(c[0]);
  if (static_cast<int>(c.size()) != nf.degree) throw InputError("element needs one coordinate per basis element");
  return FieldElement{c};
}

void emit(const Globals& g, const json& j) {
  if (g.out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw InputError("cannot write " + g.out);
  f << j.dump(2) << "\n";
}

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

// ---------------------------------------------------------------------------

struct LvalueArgs {
  std::string label = "trivial";
  double y = 0, s = 0;
  size_t prime_index = 0;
  std::string prime_gen;
};

int cmd_lvalue(const Globals& g, const LvalueArgs& a) {
  auto nf = load_field(g);
  require_q(nf);
  std::unique_ptr<RayClassGroup> rcg;
  std::unique_ptr<GaussContext> ctx;
  TwistData tw = trivial_twist();
  if (a.label != "trivial") {
    auto pl = parse_character_label(a.label);
    auto P = select_prime(nf, pl.p, a.prime_index, a.prime_gen);
    rcg = std::make_unique<RayClassGroup>(rcg_build(nf, pl.p, P, pl.n));
    ctx = std::make_unique<GaussContext>(nf, pl.p, P);
    tw = twist_data(*ctx, make_character(*rcg, pl.exps));
  }
  // a table long enough for both sums at the requested balance point
  double Qc = tw.q * tw.q;
  double y = a.y > 0 ? a.y : std::sqrt(Qc);
  auto f = load_form(g, static_cast<size_t>(25 * std::max(y, Qc / y)) + 2000);
  Qc *= static_cast<double>(f.level_norm);
  auto par = parity_and_constant(nf.r1, nf.r2, f.weights);
  if (!par.ok) throw InputError("parity condition fails for this weight and type");
  double s = a.s > 0 ? a.s : f.k() / 2.0;
  GammaFactor gf(nf, f.weights);
  SmoothingKernel ker;
  AFEConfig cfg;
  cfg.y = y;
  cfg.tol = g.tol;
  auto r = afe_lvalue(f, gf, ker, tw, s, cfg, par.C);
  CutoffFunction v1(gf, ker, 1, s);
  emit(g, {{"form", f.label},
           {"character", tw.label},
           {"s", s},
           {"value_re", r.value.real()},
           {"value_im", r.value.imag()},
           {"error_est", r.error_estimate},
           {"terms_used", {r.terms1, r.terms2}},
           {"y", r.y},
           {"main_term_re", v1(1.0 / y) / v1.gamma_s()},
           {"root_number", cj(tw.W)}});
  return 0;
}

struct ScanArgs {
  ExperimentConfig cfg;
};

int cmd_lav_scan(const Globals& g, ScanArgs a) {
  auto nf = load_field(g);
  a.cfg.threads = g.threads;
  a.cfg.tol = g.tol;
  auto f = load_form(g, experiment_table_size(a.cfg));
  auto rep = run_lav_experiment(nf, f, a.cfg);
  emit(g, to_json(rep));
  for (const auto& row : rep.rows) {
    if (!row.error.empty()) throw VerificationFailure("row n = " + std::to_string(row.n) + ": " + row.error);
    if (row.cross_gap >= a.cfg.cross_tol)
      throw VerificationFailure("routes (a) and (b) disagree at n = " + std::to_string(row.n));
  }
  return 0;
}

struct GaussArgs {
  long long p = 5;
  int c = 1;
  long long j = -1;
  std::string alpha = "1";
  bool exact = false;
  size_t prime_index = 0;
  std::string prime_gen;
};

int cmd_gauss(const Globals& g, const GaussArgs& a) {
  auto nf = load_field(g);
  if (a.c < 1) throw InputError("--c must be at least 1");
  auto P = select_prime(nf, a.p, a.prime_index, a.prime_gen);
  GaussContext ctx(nf, a.p, P);
  FieldElement alpha = parse_element(nf, a.alpha);
  std::vector<LocalCharacter> chars;
  if (a.j >= 0) {
    auto phi = LocalCharacter::make(a.p, a.c, a.j);
    if (phi.conductor() != a.c) throw InputError("character index j is not primitive at this level");
    chars.push_back(phi);
  } else {
    chars = local_characters(a.p, a.c);
  }
  json rows = json::array();
  for (const auto& phi : chars) {
    auto r = ctx.gauss_sum(phi, alpha, a.exact);
    json row{{"j", phi.j}, {"order", phi.order()}, {"value", cj(r.value)}, {"abs2", std::norm(r.value)},
             {"norm", phi.modulus}, {"root_number", cj(root_number_W(ctx, phi))}};
    if (a.exact) {
      json co = json::array();
      for (const auto& q : r.exact.coeffs()) co.push_back(to_string(q));
      row["cyclotomic_level"] = r.exact.level();
      row["cyclotomic_coeffs"] = co;
    }
    rows.push_back(row);
  }
  emit(g, {{"field", nf.label}, {"p", a.p}, {"conductor_exponent", a.c}, {"characters", rows}});
  return 0;
}

struct AverageArgs {
  std::string label;
  int n0 = 0;
  long long x = 0;
  size_t prime_index = 0;
  std::string prime_gen;
};

int cmd_average(const Globals& g, const AverageArgs& a) {
  auto nf = load_field(g);
  auto pl = parse_character_label(a.label);
  auto P = select_prime(nf, pl.p, a.prime_index, a.prime_gen);
  auto rcg = rcg_build(nf, pl.p, P, pl.n);
  auto chi = make_character(rcg, pl.exps);
  if (!rcg.is_p_power(chi.order)) throw InputError("Galois averages need a character of p-power order");
  GaussContext ctx(nf, pl.p, P);
  auto ws = orbit_root_numbers(ctx, chi, a.n0);
  json rows = json::array();
  auto one = [&](long long x) {
    auto av = average_char_residue(chi, a.n0, x);
    auto io = average_iota_residue(chi, a.n0, x, ws);
    rows.push_back({{"x", x},
                    {"average", cj(av.value)},
                    {"average_iota", cj(io.value)},
                    {"nonzero", !av.exact.is_zero()},
                    {"support_order_n0", average_support_residue(chi, a.n0, x, SupportVariant::kOrderN0)},
                    {"support_order_n0_plus_1", average_support_residue(chi, a.n0, x, SupportVariant::kOrderN0Plus1)},
                    {"support_exact", average_support_residue(chi, a.n0, x, SupportVariant::kExact)}});
  };
  if (a.x != 0) {
    if (mod(a.x, pl.p) == 0) throw InputError("--x must be prime to p");
    one(mod(a.x, std::max<long long>(rcg.modulus, 1)));
  } else {
    for (long long x = 1; x < std::max<long long>(rcg.modulus, 2); ++x)
      if (x % pl.p) one(x);
  }
  emit(g, {{"character", chi.label()},
           {"order", chi.order},
           {"conductor_exponent", chi.conductor},
           {"orbit_size", galois_exponents(pl.p, chi.order, a.n0).size()},
           {"rows", rows}});
  return 0;
}

struct KloostermanArgs {
  long long p = 5;
  std::vector<int> ns{1, 2, 3};
  int n0 = 0;
  size_t prime_index = 0;
  std::string prime_gen;
};

int cmd_kloosterman(const Globals& g, const KloostermanArgs& a) {
  auto nf = load_field(g);
  auto P = select_prime(nf, a.p, a.prime_index, a.prime_gen);
  auto rep = kloosterman_bound_report(nf, a.p, P, a.n0, a.ns);
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"n", r.n},
                    {"conductor_exponent", r.conductor},
                    {"order", r.order},
                    {"orbit_size", r.orbit_size},
                    {"max_abs", r.max_abs},
                    {"argmax", r.argmax},
                    {"envelope", r.envelope},
                    {"constant", r.constant}});
  emit(g, {{"rows", rows}, {"spread", rep.spread}, {"stable", rep.stable}, {"note", rep.note}});
  if (!rep.stable) throw VerificationFailure("measured constants vary by more than the allowed factor");
  return 0;
}

struct ConeArgs {
  long long p = 5;
  int n = 1;
  double x = 100;
  std::string alpha = "1";
  bool witnesses = false;
  size_t prime_index = 0;
  std::string prime_gen;
};

int cmd_cone_count(const Globals& g, const ConeArgs& a) {
  auto nf = load_field(g);
  auto P = select_prime(nf, a.p, a.prime_index, a.prime_gen);
  auto pc = count_progression(nf, parse_element(nf, a.alpha), P, a.p, a.n, a.x, a.witnesses);
  json out{{"count", pc.count}, {"candidates", pc.candidates}, {"p", a.p}, {"n", a.n}, {"x", a.x}};
  if (a.n >= 1) out["min_norm"] = to_string(min_norm_coset(nf, P, a.p, a.n));
  if (a.witnesses) {
    json w = json::array();
    for (const auto& wt : pc.witnesses) {
      json c = json::array();
      for (const auto& q : wt.beta.coords) c.push_back(to_string(q));
      w.push_back({{"beta", c}, {"norm", to_string(wt.norm)}});
    }
    out["witnesses"] = w;
  }
  emit(g, out);
  return 0;
}

struct VerifyArgs {
  bool fast = false;
  bool allow_known = false;
};

int cmd_verify(const Globals& g, const VerifyArgs& a) {
  SuiteOptions o;
  o.fast = a.fast;
  o.data_dir = g.data;
  o.threads = g.threads;
  auto results = run_acceptance(o, [](const CriterionResult& r) { std::cerr << format_result(r) << std::endl; });
  json rows = json::array();
  bool ok = true;
  for (const auto& r : results) {
    rows.push_back({{"id", r.id},
                    {"name", r.name},
                    {"pass", r.pass},
                    {"known_deviation", r.known_deviation},
                    {"detail", r.detail},
                    {"seconds", r.seconds}});
    ok = ok && (r.pass || (a.allow_known && r.known_deviation));
  }
  emit(g, {{"criteria", rows}, {"fast", a.fast}});
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted central L-values and Galois averages"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--field", g.field, "Field: Q, Q_sqrt2 or a field document path");
  app.add_option("--form", g.form, "Newform: delta or a newform document path");
  app.add_option("--precision-bits", g.precision_bits, "Working precision for embeddings");
  app.add_option("--tol", g.tol, "AFE truncation tolerance");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--out", g.out, "Write JSON here instead of stdout");
  app.add_option("--data", g.data, "Directory with shipped data files");

  LvalueArgs la;
  auto* lv = app.add_subcommand("lvalue", "L(s, f x chi) through the approximate functional equation");
  lv->add_option("--char", la.label, "Character label chi[e..]@p^n or 'trivial'");
  lv->add_option("--y", la.y, "Balance parameter (default sqrt of the conductor)");
  lv->add_option("--s", la.s, "Evaluation point (default k/2)");
  lv->add_option("--prime-index", la.prime_index);
  lv->add_option("--prime-gen", la.prime_gen, "Generator coordinates of the prime, comma separated");

  ScanArgs sa;
  auto* sc = app.add_subcommand("lav-scan", "Galois-averaged central values for n in a range");
  sc->add_option("--p", sa.cfg.p);
  sc->add_option("--nmin", sa.cfg.n_min);
  sc->add_option("--nmax", sa.cfg.n_max);
  sc->add_option("--a", sa.cfg.a, "y_n = N(p)^(a n)");
  sc->add_option("--eps", sa.cfg.eps);
  sc->add_option("--prime-index", sa.cfg.prime_index);

  GaussArgs ga;
  auto* gs = app.add_subcommand("gauss-sum", "Gauss sums of characters of conductor p^c");
  gs->add_option("--p", ga.p);
  gs->add_option("--c", ga.c, "Conductor exponent");
  gs->add_option("--j", ga.j, "Character index (default: all primitive)");
  gs->add_option("--alpha", ga.alpha, "Twist element, integer or coordinates");
  gs->add_flag("--exact", ga.exact, "Also return the exact cyclotomic value");
  gs->add_option("--prime-index", ga.prime_index);
  gs->add_option("--prime-gen", ga.prime_gen);

  AverageArgs aa;
  auto* av = app.add_subcommand("galois-average", "Galois averages of a p-power order character");
  av->add_option("--char", aa.label)->required();
  av->add_option("--n0", aa.n0);
  av->add_option("--x", aa.x, "Residue (default: all)");
  av->add_option("--prime-index", aa.prime_index);
  av->add_option("--prime-gen", aa.prime_gen);

  KloostermanArgs ka;
  auto* kl = app.add_subcommand("kloosterman-report", "Sup of the root-number weighted averages against N(p)^(-n/2)");
  kl->add_option("--p", ka.p);
  kl->add_option("--n", ka.ns)->delimiter(',');
  kl->add_option("--n0", ka.n0);
  kl->add_option("--prime-index", ka.prime_index);
  kl->add_option("--prime-gen", ka.prime_gen);

  ConeArgs ca;
  auto* cc = app.add_subcommand("cone-count", "Count alpha(1 + p^n) in the fundamental domain with |N| <= x");
  cc->add_option("--p", ca.p);
  cc->add_option("--n", ca.n);
  cc->add_option("--x", ca.x);
  cc->add_option("--alpha", ca.alpha);
  cc->add_flag("--witnesses", ca.witnesses);
  cc->add_option("--prime-index", ca.prime_index);
  cc->add_option("--prime-gen", ca.prime_gen);

  VerifyArgs va;
  auto* vf = app.add_subcommand("verify", "Run the acceptance suite");
  vf->add_flag("--fast", va.fast, "Reduced run");
  vf->add_flag("--allow-known", va.allow_known, "Do not fail on documented deviations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*lv) return cmd_lvalue(g, la);
    if (*sc) return cmd_lav_scan(g, sa);
    if (*gs) return cmd_gauss(g, ga);
    if (*av) return cmd_average(g, aa);
    if (*kl) return cmd_kloosterman(g, ka);
    if (*cc) return cmd_cone_count(g, ca);
    if (*vf) return cmd_verify(g, va);
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return 2;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
