#pragma once

#include <string>
#include <vector>

#include "besov/config.hpp"

namespace besov::cli {

// One verified statement: pass iff value <= bound unless noted in the name.
struct Check {
  std::string suite;
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::vector<Check> checks;
  bool passed() const;
};

// Groups: reproduce, pairing, approx, calculus, semigroup, families, property.
std::vector<std::string> suite_groups();
// Suite names of a group, "all" excluded.
std::vector<std::string> suite_names(const std::string& group);

// Runs one suite, or every suite of the group for "all". Throws
// std::invalid_argument for unknown names.
SuiteReport run_suite(const std::string& group, const std::string& suite, const QuadratureConfig& cfg,
                      unsigned threads);

}  // namespace besov::cli
