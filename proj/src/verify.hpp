#pragma once

#include <functional>
#include <string>
#include <vector>

namespace projcurv {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs the verification suite and returns one result per criterion.
// suite: "quick" (line + conic + the exact pointwise/topology checks) or
// "full" (everything, including the degree-3..5 curves and the quadric
// surface in CP^3). emit, when set, receives one formatted line per
// criterion as it completes.
std::vector<CriterionResult> run_acceptance_suite(
    const std::string& suite,
    const std::function<void(const std::string&)>& emit = {});

std::string format_criterion_line(const CriterionResult& result);

}  // namespace projcurv
