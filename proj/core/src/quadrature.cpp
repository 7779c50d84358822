#include "besov/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace besov::quad {

std::vector<double> line_breaks(const LineLayout& layout, double& lo, double& hi) {
  const double reach = std::max(layout.window, 4.0 * layout.wide);
  double cmin = 0.0;
  double cmax = 0.0;
  if (!layout.centers.empty()) {
    cmin = *std::min_element(layout.centers.begin(), layout.centers.end());
    cmax = *std::max_element(layout.centers.begin(), layout.centers.end());
  }
  lo = cmin - reach;
  hi = cmax + reach;
  std::vector<double> breaks{lo, hi};
  const double first = layout.scale / 16.0;
  for (double c : layout.centers) {
    breaks.push_back(c);
    for (double d = first; d < hi - lo; d *= 4.0) {
      breaks.push_back(c - d);
      breaks.push_back(c + d);
    }
  }
  if (layout.frequency > 0.0) {
    const double period = 2.0 * pi / layout.frequency;
    const double count = (hi - lo) / period;
    const double step = count <= 400.0 ? period : (hi - lo) / 400.0;
    for (double x = lo + step; x < hi; x += step) breaks.push_back(x);
  }
  std::vector<double> kept;
  kept.reserve(breaks.size());
  for (double b : breaks) {
    if (b >= lo && b <= hi) kept.push_back(b);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<double> unique;
  for (double b : kept) {
    if (unique.empty() || b - unique.back() > 1e-12 * (1.0 + std::abs(b))) unique.push_back(b);
  }
  if (unique.back() < hi) unique.back() = hi;
  return unique;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace besov::quad
