#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "besov/types.hpp"

namespace besov {

// Numerical policy shared by every integral in the library.
//
// The alpha integrals run over u = log(alpha) on [u_min, u_max], shifted so
// that the window covers the characteristic scales of the integrand, and are
// completed by power-law tail extrapolation. `alpha_nodes` is the number of
// points of the alpha grids used for suprema over alpha; integrals start from
// alpha_nodes / 4 panels and refine adaptively.
struct QuadratureConfig {
  int alpha_nodes = 48;
  std::array<double, 2> alpha_log_range{-12.0, 12.0};
  double beta_window_init = 16.0;
  double beta_window_growth = 4.0;
  int sup_samples = 12;  // per e-fold of distance from a feature centre
  int refine_rounds = 4;
  double abs_tol = 1e-8;
  double rel_tol = 1e-5;
  double rel_tol_2d = 1e-7;
  std::size_t budget = 400'000'000;

  void validate() const;
};

struct NormReport {
  double value = 0.0;
  double tail_bound = 0.0;
  bool converged = true;
  std::size_t evaluations = 0;
};

template <class T>
struct Estimate {
  T value{};
  double error = 0.0;
  bool converged = true;
  std::size_t evaluations = 0;
};

using ComplexEstimate = Estimate<cplx>;

// Evaluation counter shared by nested quadratures of one operation.
class Budget {
 public:
  explicit Budget(std::size_t limit) : limit_(limit) {}
  void charge(std::size_t n);
  std::size_t used() const { return used_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
  std::size_t used_ = 0;
};

}  // namespace besov
