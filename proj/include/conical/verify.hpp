#ifndef CONICAL_VERIFY_HPP
#define CONICAL_VERIFY_HPP

#include <string>
#include <vector>

namespace conical::verify {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

/// Runs acceptance criteria (all 12 when `only` is empty). Each criterion is
/// self-contained and reports one pass/fail line worth of detail.
std::vector<CriterionResult> run(const std::vector<int>& only = {});

/// Prints one line per result to stdout; returns the number of failures.
int report(const std::vector<CriterionResult>& results);

}  // namespace conical::verify

#endif
