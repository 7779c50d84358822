#include "besov/config.hpp"

#include <cmath>
#include <string>

#include "besov/error.hpp"

namespace besov {

void QuadratureConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (alpha_nodes < 8) fail("alpha_nodes must be at least 8");
  if (!(alpha_log_range[0] < alpha_log_range[1])) fail("alpha_log_range must be increasing");
  if (!(beta_window_init > 0.0)) fail("beta_window_init must be positive");
  if (!(beta_window_growth > 1.0)) fail("beta_window_growth must exceed 1");
  if (sup_samples < 2) fail("sup_samples must be at least 2");
  if (refine_rounds < 0) fail("refine_rounds must be non-negative");
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(rel_tol_2d > 0.0)) fail("tolerances must be positive");
  if (budget == 0) fail("budget must be positive");
}

void Budget::charge(std::size_t n) {
  used_ += n;
  if (used_ > limit_) {
    throw Error(ErrorCode::BudgetExceeded,
                "evaluation budget of " + std::to_string(limit_) + " exhausted");
  }
}

}  // namespace besov
