#pragma once

#include <functional>
#include <vector>

#include "besov/config.hpp"
#include "besov/function.hpp"
#include "besov/measures.hpp"
#include "besov/norms.hpp"

namespace besov {

// (Q g)(z) = -(2/pi) int_0^inf alpha int_R g(alpha + i beta) (z + alpha - i beta)^-2.
ComplexEstimate q_transform(const PlaneFunction& g, cplx z, const QuadratureConfig& cfg);

// Same integral restricted to |beta| <= n.
ComplexEstimate q_transform_strip(const PlaneFunction& g, cplx z, double n, const QuadratureConfig& cfg);

// Q of g = f' + conj(h'). The kernel of Q contains conj(h'), so Qg should be
// f - f(inf); lhs is the B0 seminorm of f, rhs is (8/pi) ||g||_W, and
// residual is the largest |Qg(z) - f(z) + f(inf)| over the probe points.
struct QBoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  bool holds = true;
};
QBoundReport q_bound_check(const HalfPlaneFunction& f, const HalfPlaneFunction& h,
                           const std::vector<cplx>& probes, const QuadratureConfig& cfg);

// K_m f = int_{2/m}^{2m} t f''(t + z) dt, evaluated in closed form after
// integrating by parts. m >= 2 need not be an integer.
HalfPlaneFunction k_triangle(const HalfPlaneFunction& f, double m);

// {int_0^{1/m} + int_m^inf} sup_beta |f'(alpha + i beta)| d alpha.
double r_tail(const HalfPlaneFunction& f, double m, const QuadratureConfig& cfg);

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

// lhs = ||f - K_m f||_B0, rhs = (8/pi) r_tail(f, m).
InequalityReport k_error_check(const HalfPlaneFunction& f, double m, const QuadratureConfig& cfg);
// lhs = ||K_m f||_B0, rhs = (8/pi) ||f||_inf log m.
InequalityReport k_seminorm_check(const HalfPlaneFunction& f, double m, const QuadratureConfig& cfg);

// int_0^inf alpha / (alpha + n/2) sup_beta |g(alpha + i beta)| d alpha.
double s_tail(const PlaneFunction& g, double n, const QuadratureConfig& cfg);

struct StripReport {
  double observed = 0.0;  // |(Q V_n g)(z) - (Q g)(z)|
  double bound = 0.0;     // (8/pi) s_tail(g, n)
  bool holds = true;
};
StripReport v_strip_error(const PlaneFunction& g, cplx z, double n, const QuadratureConfig& cfg);

struct QTrianglePolicy {
  double dt_factor = 0.1;     // t-grid step is dt_factor / n
  double tmax_factor = 30.0;  // t-grid ends near tmax_factor * n
  double log_panel = 0.2;     // Gauss panels in log alpha
  int panel_nodes = 8;
  double beta_step = 0.5;     // coarse beta step is beta_step * min(alpha, 1)
};

// Q^tri_n f(z) = f(inf) - (2/pi) int_{1/n}^n alpha int_{-n}^n f'(alpha + i beta)
// (z + alpha - i beta)^-2 by direct quadrature.
ComplexEstimate q_triangle_value(const HalfPlaneFunction& f, double n, cplx z, const QuadratureConfig& cfg);

// The same function as f(inf) delta_0 plus a density h on a uniform t-grid,
// so that its Laplace transform is Q^tri_n f.
RadonMeasure q_triangle_measure(const HalfPlaneFunction& f, double n, const QuadratureConfig& cfg,
                                const QTrianglePolicy& policy = {});

// (4 n^2 / pi) ||f'||_W + |f(inf)|.
double q_triangle_hp_bound(const HalfPlaneFunction& f, double n, const QuadratureConfig& cfg);

// Largest |F(z) - f(z)| over z = x + iy with x in [0, x_max], |y| <= c,
// sampled on a fixed grid, where F is the Laplace transform of mu.
double strip_error(const RadonMeasure& mu, const HalfPlaneFunction& f, double c, double x_max,
                   const QuadratureConfig& cfg);

// G_{alpha,phi}(z) = int_R phi(beta) (z + alpha - i beta)^-2 d beta.
struct KernelValue {
  cplx value{0.0, 0.0};
  double sup_bound = 0.0;  // (pi / alpha) sup |phi|
  bool within = true;      // |value| <= sup_bound
};
KernelValue g_kernel(double alpha, const std::function<cplx(double)>& phi, double phi_sup, cplx z,
                     const QuadratureConfig& cfg, const std::vector<double>& phi_centers = {0.0});

HalfPlaneFunction g_kernel_function(double alpha, const std::function<cplx(double)>& phi,
                                    const QuadratureConfig& cfg,
                                    const std::vector<double>& phi_centers = {0.0});

// lhs = ||G_{alpha,phi}||_B0, rhs = (4/alpha) sup |phi|.
InequalityReport g_kernel_check(double alpha, const std::function<cplx(double)>& phi, double phi_sup,
                                const QuadratureConfig& cfg, const std::vector<double>& phi_centers = {0.0});

}  // namespace besov
