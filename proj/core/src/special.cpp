#include "besov/special.hpp"

#include <cmath>
#include <limits>

#include "besov/error.hpp"
#include "besov/types.hpp"

namespace besov {

namespace {

double bessel_series(int order, double x) {
  const double h = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= order; ++k) term *= h / k;
  double sum = term;
  const double h2 = h * h;
  for (int k = 1; k < 30; ++k) {
    term *= -h2 / (k * (k + order));
    sum += term;
  }
  return sum;
}

double bessel_hankel(int order, double x) {
  const double mu = 4.0 * order * order;
  double p = 0.0;
  double q = 0.0;
  double a = 1.0;  // a_k(order) / x^k
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      const double odd = 2.0 * k - 1.0;
      a *= (mu - odd * odd) / (k * 8.0 * x);
    }
    const double size = std::abs(a);
    if (size > prev) break;
    prev = size;
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * a;
    } else {
      q += sign * a;
    }
    if (size < 1e-17) break;
  }
  const double chi = x - (0.5 * order + 0.25) * pi;
  return std::sqrt(2.0 / (pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j(int order, double x) {
  if (order < 0 || order > 4) throw Error(ErrorCode::InvalidArgument, "bessel_j supports orders 0..4");
  if (x < 0.0) return (order % 2 == 0 ? 1.0 : -1.0) * bessel_j(order, -x);
  if (x < 12.0) return bessel_series(order, x);
  return bessel_hankel(order, x);
}

std::vector<double> bessel_zeros(int order, double limit) {
  std::vector<double> zeros;
  // J_order has no zero in (0, order]; afterwards consecutive zeros are
  // separated by roughly pi, so a step of 0.25 never skips one.
  const double step = 0.25;
  double a = std::max(0.5 * order, 1e-3);
  double fa = bessel_j(order, a);
  while (a < limit) {
    const double b = std::min(a + step, limit);
    const double fb = bessel_j(order, b);
    if (fa == 0.0) {
      zeros.push_back(a);
    } else if (fa * fb < 0.0) {
      double lo = a, hi = b, flo = fa;
      for (int it = 0; it < 100 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = bessel_j(order, mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      zeros.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

double laguerre(int n, double alpha, double t) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "laguerre needs n >= 0");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + alpha - t;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - t) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre_scaled(int n, double t) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "laguerre needs n >= 0");
  double log_scale = -0.5 * t;
  double prev = 1.0;
  double cur = n == 0 ? 1.0 : 2.0 - t;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 2.0 - t) * cur - (k + 1.0) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    if (std::abs(cur) > 1e100) {
      cur *= 1e-100;
      prev *= 1e-100;
      log_scale += 100.0 * std::log(10.0);
    }
  }
  if (cur == 0.0) return 0.0;
  const double log_value = std::log(std::abs(cur)) + log_scale;
  return (cur < 0.0 ? -1.0 : 1.0) * std::exp(log_value);
}

std::vector<double> laguerre_roots(int n) {
  if (n <= 0) return {};
  // Roots lie in (0, 4n + 4); near t the oscillation length is about
  // 2 pi sqrt(t / n), and the smallest root is about 3.6 / (n + 1).
  const double upper = 4.0 * n + 6.0 + 4.0 * std::sqrt(n + 1.0);
  for (double fraction = 0.04; fraction > 1e-4; fraction *= 0.5) {
    std::vector<double> roots;
    double a = 0.0;
    double fa = laguerre_scaled(n, a);
    while (a < upper) {
      const double h = fraction * 2.0 * pi * std::sqrt((a + 1.0 / (n + 1.0)) / (n + 1.0));
      const double b = std::min(a + h, upper);
      const double fb = laguerre_scaled(n, b);
      if (fa * fb < 0.0) {
        double lo = a, hi = b, flo = fa;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = laguerre_scaled(n, mid);
          if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        roots.push_back(0.5 * (lo + hi));
      }
      a = b;
      fa = fb;
    }
    if (static_cast<int>(roots.size()) == n) return roots;
  }
  throw Error(ErrorCode::BudgetExceeded, "laguerre_roots did not separate all roots");
}

double bessel_g(double s) {
  if (s < 0.0) throw Error(ErrorCode::InvalidArgument, "bessel_g needs s >= 0");
  if (s < 1.0) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 30; ++k) {
      term *= -s / (k * (k + 1.0));
      sum += term;
    }
    return sum;
  }
  const double r = std::sqrt(s);
  return bessel_j(1, 2.0 * r) / r;
}

double bessel_g_prime(double s) {
  if (s < 0.0) throw Error(ErrorCode::InvalidArgument, "bessel_g_prime needs s >= 0");
  if (s < 1.0) {
    // -sum_k (-s)^k / (k! (k+2)!)
    double term = 0.5, sum = 0.5;
    for (int k = 1; k < 30; ++k) {
      term *= -s / (k * (k + 2.0));
      sum += term;
    }
    return -sum;
  }
  return -bessel_j(2, 2.0 * std::sqrt(s)) / s;
}

}  // namespace besov
