#pragma once

// Identity suites run by `dalab verify`. Every suite derives its random
// numbers from (seed, suite number) alone, so selecting suites never changes
// the results of the others.

#include <string>
#include <string_view>
#include <vector>

#include "dalab/run_config.hpp"

namespace dalab::verification {

enum class Bound {
  AtMost,  // pass iff residual <= tolerance
  Below,   // pass iff residual <  tolerance
  Above,   // pass iff residual >  tolerance (negative controls)
};

std::string_view to_string(Bound bound);

struct CheckResult {
  std::string name;
  int suite = 0;
  std::string formula;  // identity under test, reported as `paper_ref`
  double max_residual = 0.0;
  double tolerance = 0.0;
  Bound bound = Bound::AtMost;
  bool pass = false;
  std::string note;
};

struct SuiteInfo {
  int number;
  std::string_view name;
};

/// Suites 1..10 in order.
std::vector<SuiteInfo> suites();
std::vector<std::string> suite_names();
/// Every check name any suite can emit (tolerance override keys).
std::vector<std::string> check_names();

std::vector<CheckResult> run_suite(int number, const RunConfig& config);
/// Suites selected by config.suites (all when empty), in order.
std::vector<CheckResult> run_selected(const RunConfig& config);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace dalab::verification
