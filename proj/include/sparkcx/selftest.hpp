#pragma once

#include "sparkcx/io.hpp"

namespace sparkcx {
namespace selftest {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

// the ten check groups behind both `sparkcx selftest` and the acceptance
// suite; budgets below are the suite defaults
CheckResult check_exact_kernels(uint64_t seed, long sampled_cases);
CheckResult check_fixture_cohomology();
CheckResult check_spark_axioms();
CheckResult check_grids(uint64_t seed, long budget);
CheckResult check_cone_oracle();
CheckResult check_transport(uint64_t seed, long budget);
CheckResult check_ring(uint64_t seed);
CheckResult check_truncation(uint64_t seed);
CheckResult check_bundles();
CheckResult check_functoriality(uint64_t seed);

std::vector<CheckResult> run_all(uint64_t seed, long budget);

}  // namespace selftest
}  // namespace sparkcx
