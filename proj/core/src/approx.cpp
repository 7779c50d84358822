#include "besov/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <unsupported/Eigen/FFT>

#include "besov/error.hpp"
#include "besov/half_plane.hpp"
#include "besov/quadrature.hpp"

namespace besov {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

quad::LineLayout plane_layout(const std::vector<double>& centers, const std::vector<double>& scales,
                              double alpha, double frequency, const QuadratureConfig& cfg) {
  quad::LineLayout layout;
  layout.centers = centers;
  layout.scale = alpha;
  double wide = 1.0;
  for (double s : scales) wide = std::max(wide, s);
  layout.wide = alpha + wide;
  layout.window = cfg.beta_window_init;
  layout.growth = cfg.beta_window_growth;
  layout.frequency = frequency;
  return layout;
}

std::vector<double> breaks_in(const std::vector<double>& centers, double lo, double hi) {
  std::vector<double> b{lo, hi};
  for (double c : centers) {
    if (c > lo && c < hi) b.push_back(c);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

// int_0^1 (1 - u) e^{i theta u} du.
cplx filon_end(double theta) {
  if (std::abs(theta) < 0.5) {
    cplx sum = 0.0;
    cplx term = 1.0;
    double fact = 1.0;
    for (int k = 0; k < 16; ++k) {
      if (k > 0) {
        term *= cplx(0.0, theta);
        fact *= k;
      }
      sum += term / (fact * (k + 1) * (k + 2));
    }
    return sum;
  }
  const cplx e = std::exp(cplx(0.0, theta));
  const cplx a = (e - 1.0) / cplx(0.0, theta);
  const cplx b = e / cplx(0.0, theta) + (e - 1.0) / (theta * theta);
  return a - b;
}

}  // namespace

ComplexEstimate q_transform(const PlaneFunction& g, cplx z, const QuadratureConfig& cfg) {
  cfg.validate();
  Budget budget(cfg.budget);
  const std::vector<double> centers = merge_hints(g.centers, {z.imag()});
  std::vector<double> scales = g.scales;
  if (z.real() > 0.0) scales = merge_hints(scales, {z.real()});
  auto integrand = [&](double alpha, double beta) {
    const cplx d = z + cplx(alpha, -beta);
    return alpha * g.value(alpha, beta) / (d * d);
  };
  auto layout = [&](double alpha) { return plane_layout(centers, scales, alpha, g.frequency, cfg); };
  quad::Result<cplx> r =
      half_plane_integral<cplx>(integrand, layout, alpha_window(cfg, scales), cfg, budget, cfg.rel_tol_2d);
  if (r.tail_divergent) throw Error(ErrorCode::NotInW, "Q integral diverges");
  ComplexEstimate out;
  out.value = -(2.0 / pi) * r.value;
  out.error = (2.0 / pi) * r.error;
  out.converged = r.converged;
  out.evaluations = budget.used();
  return out;
}

ComplexEstimate q_transform_strip(const PlaneFunction& g, cplx z, double n, const QuadratureConfig& cfg) {
  cfg.validate();
  Budget budget(cfg.budget);
  const std::vector<double> centers = merge_hints(g.centers, {z.imag()});
  std::vector<double> scales = g.scales;
  if (z.real() > 0.0) scales = merge_hints(scales, {z.real()});
  const std::vector<double> breaks = breaks_in(centers, -n, n);
  bool inner_ok = true;
  auto outer = [&](double alpha) {
    auto line = [&](double beta) {
      const cplx d = z + cplx(alpha, -beta);
      return alpha * g.value(alpha, beta) / (d * d);
    };
    quad::Result<cplx> r = quad::integrate<cplx>(line, breaks, quad::Tolerance{0.01 * cfg.abs_tol / alpha,
                                                                                0.1 * cfg.rel_tol_2d},
                                                 budget);
    if (!r.converged) inner_ok = false;
    return r.value;
  };
  const auto window = alpha_window(cfg, scales);
  quad::Result<cplx> r = quad::integrate_alpha<cplx>(outer, window[0], window[1], alpha_panels(cfg, window),
                                                     quad::Tolerance{cfg.abs_tol, cfg.rel_tol_2d}, budget);
  if (r.tail_divergent) throw Error(ErrorCode::NotInW, "Q integral diverges");
  ComplexEstimate out;
  out.value = -(2.0 / pi) * r.value;
  out.error = (2.0 / pi) * r.error;
  out.converged = r.converged && inner_ok;
  out.evaluations = budget.used();
  return out;
}

QBoundReport q_bound_check(const HalfPlaneFunction& f, const HalfPlaneFunction& h,
                           const std::vector<cplx>& probes, const QuadratureConfig& cfg) {
  PlaneFunction g;
  g.value = [f, h](double a, double b) {
    const cplx w(a, b);
    return f.derivative(w) + std::conj(h.derivative(w));
  };
  g.centers = merge_hints(f.centers(), h.centers());
  g.scales = merge_hints(f.scales(), h.scales());
  g.frequency = (f.frequency() == 0.0) ? h.frequency()
                : (h.frequency() == 0.0 || h.frequency() == f.frequency()) ? f.frequency()
                                                                            : -1.0;
  QBoundReport rep;
  rep.lhs = besov_seminorm(f, cfg).value;
  rep.rhs = (8.0 / pi) * w_norm(g, cfg).value;
  for (cplx z : probes) {
    const cplx q = q_transform(g, z, cfg).value;
    rep.residual = std::max(rep.residual, std::abs(q - (f(z) - f.at_infinity())));
  }
  rep.holds = rep.lhs <= rep.rhs + 1e-6 * (1.0 + rep.rhs);
  return rep;
}

HalfPlaneFunction k_triangle(const HalfPlaneFunction& f, double m) {
  if (!(m >= 2.0)) throw Error(ErrorCode::InvalidArgument, "k_triangle needs m >= 2");
  if (!f.has_derivative()) throw Error(ErrorCode::MissingDerivative, f.name() + " has no derivative");
  const double a = 2.0 / m;
  const double b = 2.0 * m;
  HalfPlaneFunction::Parts p;
  p.name = "ktri[" + f.name() + "]";
  p.value = [f, a, b](cplx z) {
    return f(a + z) - f(b + z) - a * f.derivative(a + z) + b * f.derivative(b + z);
  };
  p.first = [f, a, b](cplx z) {
    return f.derivative(a + z) - f.derivative(b + z) - a * f.second_derivative(a + z) +
           b * f.second_derivative(b + z);
  };
  p.second = [f, a, b](cplx z) {
    auto third = [&](cplx w) { return cauchy_derivative(f, w, 3); };
    return f.second_derivative(a + z) - f.second_derivative(b + z) - a * third(a + z) + b * third(b + z);
  };
  p.boundary = [v = p.value](double s) { return v(cplx(0.0, s)); };
  p.at_infinity = 0.0;
  p.decay_power = f.decay_power();
  p.centers = f.centers();
  p.scales = merge_hints(f.scales(), {a, b});
  p.frequency = f.frequency();
  return HalfPlaneFunction(std::move(p));
}

double r_tail(const HalfPlaneFunction& f, double m, const QuadratureConfig& cfg) {
  return besov_partial(f, 0.0, 1.0 / m, cfg).value + besov_partial(f, m, inf, cfg).value;
}

InequalityReport k_error_check(const HalfPlaneFunction& f, double m, const QuadratureConfig& cfg) {
  InequalityReport rep;
  rep.lhs = besov_seminorm(f - k_triangle(f, m), cfg).value;
  rep.rhs = (8.0 / pi) * r_tail(f, m, cfg);
  rep.holds = rep.lhs <= rep.rhs + 1e-6 * (1.0 + rep.rhs);
  return rep;
}

InequalityReport k_seminorm_check(const HalfPlaneFunction& f, double m, const QuadratureConfig& cfg) {
  InequalityReport rep;
  rep.lhs = besov_seminorm(k_triangle(f, m), cfg).value;
  rep.rhs = (8.0 / pi) * sup_norm(f, cfg).value * std::log(m);
  rep.holds = rep.lhs <= rep.rhs + 1e-6 * (1.0 + rep.rhs);
  return rep;
}

double s_tail(const PlaneFunction& g, double n, const QuadratureConfig& cfg) {
  PlaneFunction w = g;
  w.value = [g, n](double a, double b) { return a / (a + 0.5 * n) * g.value(a, b); };
  if (g.sup_profile) w.sup_profile = [g, n](double a) { return a / (a + 0.5 * n) * g.sup_profile(a); };
  w.scales = merge_hints(g.scales, {0.5 * n});
  return w_norm(w, cfg).value;
}

StripReport v_strip_error(const PlaneFunction& g, cplx z, double n, const QuadratureConfig& cfg) {
  if (!(n > 2.0 * std::abs(z.imag()))) {
    throw Error(ErrorCode::StripViolation, "strip cut-off needs n > 2|Im z|");
  }
  StripReport rep;
  rep.observed = std::abs(q_transform_strip(g, z, n, cfg).value - q_transform(g, z, cfg).value);
  rep.bound = (8.0 / pi) * s_tail(g, n, cfg);
  rep.holds = rep.observed <= rep.bound + 1e-6;
  return rep;
}

ComplexEstimate q_triangle_value(const HalfPlaneFunction& f, double n, cplx z, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(n >= 2.0)) throw Error(ErrorCode::InvalidArgument, "Q-triangle needs n >= 2");
  Budget budget(cfg.budget);
  const std::vector<double> breaks = breaks_in(merge_hints(f.centers(), {z.imag()}), -n, n);
  bool inner_ok = true;
  auto outer = [&](double alpha) {
    auto line = [&](double beta) {
      const cplx d = z + cplx(alpha, -beta);
      return alpha * f.derivative(cplx(alpha, beta)) / (d * d);
    };
    quad::Result<cplx> r = quad::integrate<cplx>(
        line, breaks, quad::Tolerance{0.01 * cfg.abs_tol / alpha, 0.1 * cfg.rel_tol_2d}, budget);
    if (!r.converged) inner_ok = false;
    return r.value;
  };
  const double u = std::log(n);
  quad::Result<cplx> r = quad::integrate_alpha<cplx>(outer, -u, u, std::max(4, static_cast<int>(4 * u)),
                                                     quad::Tolerance{cfg.abs_tol, cfg.rel_tol_2d}, budget,
                                                     false, false);
  ComplexEstimate out;
  out.value = f.at_infinity() - (2.0 / pi) * r.value;
  out.error = (2.0 / pi) * r.error;
  out.converged = r.converged && inner_ok;
  out.evaluations = budget.used();
  return out;
}

RadonMeasure q_triangle_measure(const HalfPlaneFunction& f, double n, const QuadratureConfig& cfg,
                                const QTrianglePolicy& policy) {
  cfg.validate();
  if (!(n >= 2.0)) throw Error(ErrorCode::InvalidArgument, "Q-triangle needs n >= 2");
  if (!f.has_derivative()) throw Error(ErrorCode::MissingDerivative, f.name() + " has no derivative");
  // h(t) = -(2t/pi) int_{1/n}^n alpha e^{-alpha t} int_{-n}^n f'(alpha + i beta) e^{i beta t}.
  // The beta integral uses Filon's rule on a piecewise-linear interpolant
  // with one Richardson step; the t-grid step dt = pi / (n R) makes
  // h_beta * dt = 2 pi / M for h_beta = 2n / N, so every beta sum is one FFT
  // of length M = R N.
  const int R = 1 << std::max(0, static_cast<int>(std::ceil(std::log2(pi / policy.dt_factor))));
  const double dt = pi / (n * R);
  const std::size_t K = static_cast<std::size_t>(std::ceil(policy.tmax_factor * n / dt)) + 1;

  std::vector<cplx> h(K, 0.0);
  std::vector<cplx> edge(K);  // e^{i n t_k}
  for (std::size_t k = 0; k < K; ++k) edge[k] = std::polar(1.0, n * k * dt);

  std::map<std::size_t, std::vector<cplx>> end_weights;  // filon_end(2 pi k / M), keyed by M
  auto weights_for = [&](std::size_t M) -> const std::vector<cplx>& {
    auto it = end_weights.find(M);
    if (it != end_weights.end()) return it->second;
    std::vector<cplx> w(K);
    for (std::size_t k = 0; k < K; ++k) w[k] = filon_end(2.0 * pi * static_cast<double>(k) / M);
    return end_weights.emplace(M, std::move(w)).first->second;
  };

  std::vector<double> gx, gw;
  quad::gauss_legendre(policy.panel_nodes, gx, gw);
  const double u0 = -std::log(n);
  const double u1 = std::log(n);
  const int panels = std::max(1, static_cast<int>(std::ceil((u1 - u0) / policy.log_panel)));
  const double du = (u1 - u0) / panels;

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  double envelope = 0.0;  // sum of |w| alpha sup|f'| over the nodes
  std::vector<cplx> samples, padded, spectrum, fine;

  for (int p = 0; p < panels; ++p) {
    for (int q = 0; q < policy.panel_nodes; ++q) {
      const double u = u0 + du * (p + 0.5 * (gx[q] + 1.0));
      const double alpha = std::exp(u);
      const double weight = 0.5 * du * gw[q] * alpha;  // d alpha = alpha du
      const double target = 0.5 * policy.beta_step * std::min(alpha, 1.0);
      std::size_t N = 2;
      while (2.0 * n / N > target) N *= 2;
      const double hb = 2.0 * n / N;
      samples.resize(N + 1);
      double gmax = 0.0;
      for (std::size_t j = 0; j <= N; ++j) {
        samples[j] = f.derivative(cplx(alpha, -n + j * hb));
        gmax = std::max(gmax, std::abs(samples[j]));
      }
      envelope += weight * alpha * gmax;
      const std::size_t kmax = std::min<std::size_t>(K, static_cast<std::size_t>(45.0 / (alpha * dt)) + 1);

      // Beta sums for spacing hb (stride 1) and 2 hb (stride 2).
      auto beta_integral = [&](std::size_t stride, std::vector<cplx>& out) {
        const std::size_t count = N / stride;
        const double step = hb * stride;
        const std::size_t M = static_cast<std::size_t>(R) * count;
        padded.assign(M, 0.0);
        for (std::size_t j = 0; j < count; ++j) padded[j] = samples[j * stride];
        fft.inv(spectrum, padded);
        const std::vector<cplx>& ew = weights_for(M);
        out.resize(kmax);
        const cplx g0 = samples[0];
        const cplx gn = samples[N];
        for (std::size_t k = 0; k < kmax; ++k) {
          const double theta = 2.0 * pi * static_cast<double>(k) / M;
          const cplx e0 = ew[k];
          const double wt = 2.0 * e0.real();
          // Sum over j = 0..count of g_j e^{i beta_j t}, beta_j = -n + j step; the
          // last node lies outside the FFT's period and is added directly.
          const cplx dsum = std::conj(edge[k]) * (spectrum[k % M] + gn * std::polar(1.0, count * theta));
          const cplx ends = (e0 - wt) * g0 * std::conj(edge[k]) + (std::conj(e0) - wt) * gn * edge[k];
          out[k] = step * (wt * dsum + ends);
        }
      };
      std::vector<cplx> coarse;
      beta_integral(1, fine);
      beta_integral(2, coarse);
      double decay = 1.0;
      const double ratio = std::exp(-alpha * dt);
      for (std::size_t k = 0; k < kmax; ++k) {
        const cplx s = (4.0 * fine[k] - coarse[k]) / 3.0;
        h[k] += (-(2.0 / pi) * (k * dt) * weight * alpha * decay) * s;
        decay *= ratio;
      }
    }
  }
  GridDensity g;
  g.t0 = 0.0;
  g.step = dt;
  g.values = std::move(h);
  const double T = g.end();
  g.tail_bound = (4.0 * n / pi) * envelope * n * (T + n) * std::exp(-T / n);
  RadonMeasure mu = RadonMeasure::grid(std::move(g));
  if (f.at_infinity() != cplx(0.0)) mu += RadonMeasure::dirac(0.0, f.at_infinity());
  return mu;
}

double q_triangle_hp_bound(const HalfPlaneFunction& f, double n, const QuadratureConfig& cfg) {
  return (4.0 * n * n / pi) * besov_seminorm(f, cfg).value + std::abs(f.at_infinity());
}

double strip_error(const RadonMeasure& mu, const HalfPlaneFunction& f, double c, double x_max,
                   const QuadratureConfig& cfg) {
  double worst = 0.0;
  for (double xf : {0.0, 0.125, 0.25, 0.5, 1.0}) {
    for (double yf : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      const cplx z(xf * x_max, yf * c);
      worst = std::max(worst, std::abs(laplace(mu, z, cfg).value - f(z)));
    }
  }
  return worst;
}

KernelValue g_kernel(double alpha, const std::function<cplx(double)>& phi, double phi_sup, cplx z,
                     const QuadratureConfig& cfg, const std::vector<double>& phi_centers) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "g_kernel needs alpha > 0");
  Budget budget(cfg.budget);
  quad::LineLayout layout = plane_layout(merge_hints(phi_centers, {z.imag()}), {1.0}, z.real() + alpha, 0.0, cfg);
  auto line = [&](double beta) {
    const cplx d = z + cplx(alpha, -beta);
    return phi(beta) / (d * d);
  };
  quad::Result<cplx> r = quad::integrate_line<cplx>(line, layout, quad::Tolerance{cfg.abs_tol, cfg.rel_tol}, budget);
  KernelValue out;
  out.value = r.value;
  out.sup_bound = pi / alpha * phi_sup;
  out.within = std::abs(out.value) <= out.sup_bound + cfg.abs_tol;
  return out;
}

HalfPlaneFunction g_kernel_function(double alpha, const std::function<cplx(double)>& phi,
                                    const QuadratureConfig& cfg, const std::vector<double>& phi_centers) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "g_kernel needs alpha > 0");
  auto power = [alpha, phi, cfg, phi_centers](cplx z, int k, double c) {
    Budget budget(cfg.budget);
    quad::LineLayout layout =
        plane_layout(merge_hints(phi_centers, {z.imag()}), {1.0}, z.real() + alpha, 0.0, cfg);
    auto line = [&](double beta) { return phi(beta) / std::pow(z + cplx(alpha, -beta), k); };
    return c * quad::integrate_line<cplx>(line, layout, quad::Tolerance{1e-3 * cfg.abs_tol, 1e-2 * cfg.rel_tol},
                                          budget)
                   .value;
  };
  HalfPlaneFunction::Parts p;
  p.name = "G[" + std::to_string(alpha) + "]";
  p.value = [power](cplx z) { return power(z, 2, 1.0); };
  p.first = [power](cplx z) { return power(z, 3, -2.0); };
  p.second = [power](cplx z) { return power(z, 4, 6.0); };
  p.boundary = [power](double s) { return power(cplx(0.0, s), 2, 1.0); };
  p.at_infinity = 0.0;
  p.centers = phi_centers;
  p.scales = {alpha};
  return HalfPlaneFunction(std::move(p));
}

InequalityReport g_kernel_check(double alpha, const std::function<cplx(double)>& phi, double phi_sup,
                                const QuadratureConfig& cfg, const std::vector<double>& phi_centers) {
  InequalityReport rep;
  rep.lhs = besov_seminorm(g_kernel_function(alpha, phi, cfg, phi_centers), cfg).value;
  rep.rhs = 4.0 / alpha * phi_sup;
  rep.holds = rep.lhs <= rep.rhs + 1e-6 * (1.0 + rep.rhs);
  return rep;
}

}  // namespace besov
