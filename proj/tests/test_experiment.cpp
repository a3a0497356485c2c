#include "lav/experiment.hpp"

#include <gtest/gtest.h>

#include <atomic>

using namespace lav;

namespace {

const NumberFieldData& Qf() {
  static NumberFieldData q = nf_load(rationals_document());
  return q;
}

ExperimentConfig fast_config() {
  ExperimentConfig cfg;
  cfg.n_max = 2;
  cfg.threads = 2;
  return cfg;
}

const Report& fast_report() {
  static Report rep = [] {
    auto cfg = fast_config();
    return run_lav_experiment(Qf(), builtin_delta(experiment_table_size(cfg)), cfg);
  }();
  return rep;
}

}  // namespace

TEST(Experiment, ParallelForVisitsEachIndexOnce) {
  for (unsigned t : {1u, 3u, 16u}) {
    std::vector<std::atomic<int>> hits(37);
    parallel_for(hits.size(), t, [&](size_t i) { hits[i]++; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  parallel_for(0, 4, [](size_t) { FAIL(); });
}

TEST(Experiment, CharacterLabels) {
  auto l = parse_character_label("chi[3,-1,0]@5^2");
  EXPECT_EQ(l.exps, (std::vector<long long>{3, -1, 0}));
  EXPECT_EQ(l.p, 5);
  EXPECT_EQ(l.n, 2);
  EXPECT_TRUE(parse_character_label("chi[]@7^0").exps.empty());
  for (const char* bad : {"psi[1]@5^2", "chi[1]5^2", "chi[1]@5", "chi[x]@5^2", "chi[1]@4^2", "chi[1]@2^2",
                          "chi[1]@5^-1", "chi1]@5^[2"})
    EXPECT_THROW(parse_character_label(bad), InputError) << bad;
}

TEST(Experiment, ReportJsonRoundTrip) {
  const auto& rep = fast_report();
  auto j = to_json(rep);
  auto back = report_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(to_json(back), j);
  ASSERT_EQ(back.rows.size(), rep.rows.size());
  EXPECT_EQ(back.rows[1].values, rep.rows[1].values);
  EXPECT_EQ(back.rows[1].label, rep.rows[1].label);
  EXPECT_THROW(report_from_json(nlohmann::json::object()), InputError);
  EXPECT_EQ(cplx_from_json(to_json(cplx(1.5, -2.25))), cplx(1.5, -2.25));
}

TEST(Experiment, FastRunRows) {
  const auto& rep = fast_report();
  EXPECT_EQ(rep.delta_order, 2);
  EXPECT_FALSE(rep.note.empty());
  ASSERT_EQ(rep.rows.size(), 2u);
  const auto& r1 = rep.rows[0];
  EXPECT_TRUE(r1.error.empty()) << r1.error;
  EXPECT_EQ(r1.orbit_size, 1u);
  EXPECT_NEAR(r1.lav.real(), 0.7921228386, 1e-9);
  const auto& r2 = rep.rows[1];
  EXPECT_TRUE(r2.error.empty()) << r2.error;
  EXPECT_DOUBLE_EQ(r2.y, 625);
  EXPECT_EQ(r2.conductor, 2);
  EXPECT_EQ(r2.order, 5);
  EXPECT_EQ(r2.orbit_size, 4u);
  EXPECT_EQ(r2.values.size(), 4u);
  EXPECT_LT(r2.cross_gap, 1e-7);
  EXPECT_LT(std::abs(r2.lav.imag()), 1e-12);
  EXPECT_TRUE(r2.nonvanishing);
  // the orbit average is the mean of the listed values
  cplx mean = 0;
  for (auto v : r2.values) mean += v;
  EXPECT_LT(std::abs(mean / 4.0 - r2.lav), 1e-13);
}

TEST(Experiment, RejectsBadConfigurations) {
  auto f = builtin_delta(2000);
  auto cfg = fast_config();
  cfg.a = 4;
  EXPECT_THROW(run_lav_experiment(Qf(), f, cfg), InputError);
  cfg = fast_config();
  cfg.p = 9;
  EXPECT_THROW(run_lav_experiment(Qf(), f, cfg), InputError);
  cfg = fast_config();
  cfg.n_min = 3;
  EXPECT_THROW(run_lav_experiment(Qf(), f, cfg), InputError);
  cfg = fast_config();
  cfg.prime_index = 1;
  EXPECT_THROW(run_lav_experiment(Qf(), f, cfg), InputError);
  EXPECT_THROW(run_lav_experiment(nf_load(sqrt2_document()), f, fast_config()), Unsupported);
}

TEST(Experiment, CountGridOverQ) {
  auto P = primes_above(Qf(), 5)[0];
  std::vector<int> ns{1, 2};
  std::vector<double> xs{10, 100, 1000};
  auto rep = verify_count_bound(Qf(), 5, P, ns, xs);
  ASSERT_EQ(rep.cells.size(), 6u);
  for (const auto& c : rep.cells) {
    long long m = ipow(5, static_cast<int>(c[0]));
    // 1 + k m in (0, x]
    double U = std::floor((c[1] - 1) / static_cast<double>(m)) + 1;
    EXPECT_EQ(c[2], U);
  }
  EXPECT_TRUE(rep.stable);
  EXPECT_LE(rep.sup, 2);
}
