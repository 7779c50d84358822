#pragma once

// Double integrals over the right half-plane: an outer integral in
// u = log(alpha) and an inner integral along the vertical line Re w = alpha.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "besov/config.hpp"
#include "besov/quadrature.hpp"

namespace besov {

// Outer window in u = log(alpha), wide enough to contain every
// characteristic scale of the problem plus the configured margins.
std::array<double, 2> alpha_window(const QuadratureConfig& cfg, const std::vector<double>& scales);

int alpha_panels(const QuadratureConfig& cfg, const std::array<double, 2>& window);

quad::SupPolicy sup_policy(const QuadratureConfig& cfg);

// Integrand(alpha, beta) must already contain every alpha weight; Layout(alpha)
// returns the line layout at that alpha.
template <class T, class Integrand, class Layout>
quad::Result<T> half_plane_integral(Integrand&& integrand, Layout&& layout_at,
                                    const std::array<double, 2>& window,
                                    const QuadratureConfig& cfg, Budget& budget,
                                    double rel_tol) {
  bool inner_ok = true;
  bool inner_divergent = false;
  const double width = window[1] - window[0];
  auto outer = [&](double alpha) -> T {
    const quad::LineLayout layout = layout_at(alpha);
    const double abs_inner = 0.01 * cfg.abs_tol / (std::max(alpha, 1e-300) * width);
    const quad::Tolerance inner_tol{abs_inner, 0.1 * rel_tol};
    auto line = [&](double beta) -> T { return integrand(alpha, beta); };
    quad::Result<T> r = quad::integrate_line<T>(line, layout, inner_tol, budget);
    if (!r.converged) inner_ok = false;
    if (r.tail_divergent) inner_divergent = true;
    return r.value;
  };
  quad::Result<T> out = quad::integrate_alpha<T>(outer, window[0], window[1],
                                                 alpha_panels(cfg, window),
                                                 quad::Tolerance{cfg.abs_tol, rel_tol}, budget);
  out.converged = out.converged && inner_ok;
  out.tail_divergent = out.tail_divergent || inner_divergent;
  out.evaluations = budget.used();
  return out;
}

}  // namespace besov
