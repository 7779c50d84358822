#pragma once

#include <vector>

namespace besov {

// Bessel function of the first kind J_order(x), order in 0..4. Power series
// below x = 12, Hankel's asymptotic expansion above.
double bessel_j(int order, double x);

// Positive zeros of J_order below `limit`, in increasing order.
std::vector<double> bessel_zeros(int order, double limit);

// Generalized Laguerre polynomial L_n^{(alpha)}(t) by the three-term recurrence.
double laguerre(int n, double alpha, double t);

// exp(-t/2) L_n^{(1)}(t), safe from overflow for large n and t.
double laguerre_scaled(int n, double t);

// The n real roots of L_n^{(1)}, found by a scan on the oscillation scale
// followed by bisection.
std::vector<double> laguerre_roots(int n);

// G(s) = J_1(2 sqrt s) / sqrt s and its first derivative -J_2(2 sqrt s) / s.
double bessel_g(double s);
double bessel_g_prime(double s);

}  // namespace besov
