// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--fast] [--allow-known] [--data DIR] [--threads N]
//
// Exits 1 when a criterion fails. With --allow-known, failures flagged as
// known deviations are still printed as FAIL but do not change the exit code.

#include "lav/verify.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  lav::SuiteOptions o;
  o.data_dir = LAV_DATA_DIR;
  bool allow_known = false;
  app.add_flag("--fast", o.fast);
  app.add_flag("--allow-known", allow_known);
  app.add_option("--data", o.data_dir);
  app.add_option("--threads", o.threads);
  CLI11_PARSE(app, argc, argv);

  lav::detail::Timer total;
  int failed = 0, known = 0;
  lav::run_acceptance(o, [&](const lav::CriterionResult& r) {
    std::cout << lav::format_result(r) << std::endl;
    if (!r.pass) ++(r.known_deviation ? known : failed);
  });
  std::cout << "summary: " << 11 - failed - known << " passed, " << known << " known deviations, " << failed
            << " failed, " << lav::detail::fmt(total.seconds(), 3) << " s" << std::endl;
  if (failed > 0) return 1;
  if (known > 0 && !allow_known) return 1;
  return 0;
}
