#include <gtest/gtest.h>
#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(LAV_CLI_PATH) + " --data " + LAV_DATA_DIR + " " + args + " 2>/dev/null";
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return r;
  char buf[4096];
  size_t k;
  while ((k = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, k);
  int st = pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, LvalueTrivialTwist) {
  auto r = run("lvalue");
  ASSERT_EQ(r.code, 0);
  auto j = json_of(r);
  for (const char* k : {"value_re", "value_im", "error_est", "terms_used", "y", "main_term_re", "root_number"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_NEAR(j["value_re"].get<double>(), 0.7921228386, 1e-9);
  EXPECT_LT(j["error_est"].get<double>(), 1e-10);
}

TEST(Cli, LvalueIsIndependentOfY) {
  auto a = json_of(run("lvalue --char 'chi[2]@5^2' --y 20"));
  auto b = json_of(run("lvalue --char 'chi[2]@5^2' --y 40"));
  EXPECT_NEAR(a["value_re"].get<double>(), b["value_re"].get<double>(), 1e-11);
  EXPECT_NEAR(a["value_im"].get<double>(), b["value_im"].get<double>(), 1e-11);
}

TEST(Cli, GaussSumModulus) {
  auto r = run("gauss-sum --p 5 --c 2");
  ASSERT_EQ(r.code, 0);
  auto j = json_of(r);
  ASSERT_FALSE(j["characters"].empty());
  for (const auto& c : j["characters"]) EXPECT_NEAR(c["abs2"].get<double>(), 25, 1e-9);
}

TEST(Cli, GaloisAverageAndKloosterman) {
  auto r = run("galois-average --char 'chi[2]@5^2'");
  ASSERT_EQ(r.code, 0);
  auto j = json_of(r);
  EXPECT_EQ(j["order"], 5);
  for (const auto& row : j["rows"]) EXPECT_EQ(row["nonzero"], row["support_exact"]);
  auto k = run("kloosterman-report --p 5 --n 1,2");
  ASSERT_EQ(k.code, 0);
  EXPECT_EQ(json_of(k)["rows"].size(), 2u);
}

TEST(Cli, ConeCountAndOutFile) {
  std::string path = ::testing::TempDir() + "lav_cli_count.json";
  std::remove(path.c_str());
  auto r = run("--out " + path + " cone-count --p 5 --n 1 --x 100");
  ASSERT_EQ(r.code, 0);
  std::ifstream in(path);
  ASSERT_TRUE(in.good());
  EXPECT_EQ(nlohmann::json::parse(in)["count"], 20);
}

TEST(Cli, LavScan) {
  auto r = run("lav-scan --nmax 2");
  ASSERT_EQ(r.code, 0);
  auto j = json_of(r);
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_NEAR(j["rows"][0]["lav"][0].get<double>(), 0.7921228386, 1e-9);
}

TEST(Cli, BadInputExitsWithTwo) {
  EXPECT_EQ(run("lvalue --char 'chi[1]@4^2'").code, 2);
  EXPECT_EQ(run("lvalue --char 'chi[oops'").code, 2);
  EXPECT_EQ(run("--field /nonexistent.json lvalue").code, 2);
  EXPECT_EQ(run(std::string("--form ") + LAV_DATA_DIR + "/forms/delta_corrupted.json lvalue").code, 2);
  EXPECT_EQ(run("lav-scan --a 4").code, 2);
  EXPECT_EQ(run("gauss-sum --p 4").code, 2);
  EXPECT_EQ(run("--threads 0 lvalue").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}
