#ifndef MINSUM_VERIFY_HPP
#define MINSUM_VERIFY_HPP

#include <string>
#include <vector>

namespace minsum {

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Verification suites over the built-in corpus.  Each returns one result per
// check; a suite passes when every check does.

std::vector<CheckResult> verify_fixpoint();
std::vector<CheckResult> verify_tree_equivalence();
std::vector<CheckResult> verify_cycle_characterization();
std::vector<CheckResult> verify_regular_characterization();
std::vector<CheckResult> verify_constants();
std::vector<CheckResult> verify_walks();

std::vector<CheckResult> run_suite(const std::string& name);
std::vector<std::string> suite_names();

}  // namespace minsum

#endif
