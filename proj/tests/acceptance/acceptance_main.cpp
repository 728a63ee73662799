// Acceptance suite: ten criteria, one pass/fail line each, all tolerances
// exact (every comparison is in exact integer/rational arithmetic).
#include <cstdio>

#include "sparkcx/selftest.hpp"

using namespace sparkcx;

int main() {
  struct Row {
    int number;
    const char* title;
    selftest::CheckResult result;
  };
  std::vector<Row> rows;

  rows.push_back({1, "exact kernels: SNF/HNF identities + brute-force solver agreement",
                  selftest::check_exact_kernels(/*seed=*/0, /*sampled_cases=*/500)});
  rows.push_back({2, "fixture cohomology vs independent oracle table",
                  selftest::check_fixture_cohomology()});
  rows.push_back({3, "spark axioms: good covers validate, violations rejected",
                  selftest::check_spark_axioms()});
  rows.push_back({4, "fundamental sequences and 3x3 grid, degrees -1..2",
                  selftest::check_grids(/*seed=*/0, /*budget=*/64)});
  rows.push_back({5, "cone/hypercohomology vs universal-coefficient oracle",
                  selftest::check_cone_oracle()});
  rows.push_back({6, "quasi-isomorphism transport round trips",
                  selftest::check_transport(/*seed=*/0, /*budget=*/32)});
  rows.push_back({7, "ring structure: Leibniz, unit, associativity, delta homomorphisms",
                  selftest::check_ring(/*seed=*/0)});
  rows.push_back({8, "level-p truncation: surjectivity and kernel ideal",
                  selftest::check_truncation(/*seed=*/0)});
  rows.push_back({9, "line bundles: chern round trips and flat classification",
                  selftest::check_bundles()});
  rows.push_back({10, "functoriality along circle12 -> circle6 -> point",
                  selftest::check_functoriality(/*seed=*/0)});

  bool ok = true;
  for (const auto& r : rows) {
    std::printf("[%s] criterion %2d: %s (%.1fs)\n", r.result.passed ? "PASS" : "FAIL",
                r.number, r.title, r.result.seconds);
    if (!r.result.detail.empty()) std::printf("           %s\n", r.result.detail.c_str());
    ok = ok && r.result.passed;
  }
  std::printf("%s\n", ok ? "acceptance: all criteria passed" : "acceptance: FAILURES above");
  return ok ? 0 : 1;
}
