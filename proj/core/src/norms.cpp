#include "besov/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "besov/error.hpp"
#include "besov/half_plane.hpp"
#include "besov/quadrature.hpp"

namespace besov {

std::array<double, 2> alpha_window(const QuadratureConfig& cfg, const std::vector<double>& scales) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double s : scales) {
    if (!(s > 0.0) || !std::isfinite(s)) continue;
    lo = std::min(lo, std::log(s));
    hi = std::max(hi, std::log(s));
  }
  if (!std::isfinite(lo)) lo = hi = 0.0;
  lo = std::max(lo, -40.0);
  hi = std::min(hi, 40.0);
  return {lo + cfg.alpha_log_range[0], hi + cfg.alpha_log_range[1]};
}

int alpha_panels(const QuadratureConfig& cfg, const std::array<double, 2>& window) {
  const int by_width = static_cast<int>(std::ceil((window[1] - window[0]) / 2.0));
  return std::max(cfg.alpha_nodes / 4, by_width);
}

quad::SupPolicy sup_policy(const QuadratureConfig& cfg) {
  quad::SupPolicy p;
  p.samples_per_efold = cfg.sup_samples;
  p.refine_rounds = cfg.refine_rounds;
  p.rel_tol = cfg.rel_tol;
  return p;
}

namespace {

double max_scale(const std::vector<double>& scales) {
  double m = 0.0;
  for (double s : scales) m = std::max(m, s);
  return m;
}

double min_scale(const std::vector<double>& scales) {
  double m = std::numeric_limits<double>::infinity();
  for (double s : scales) {
    if (s > 0.0) m = std::min(m, s);
  }
  return std::isfinite(m) ? m : 1.0;
}

quad::LineLayout layout_for(const std::vector<double>& centers, const std::vector<double>& scales,
                            double alpha, double frequency, const QuadratureConfig& cfg) {
  quad::LineLayout layout;
  layout.centers = centers;
  layout.scale = alpha;
  layout.wide = alpha + max_scale(scales);
  layout.window = cfg.beta_window_init;
  layout.growth = cfg.beta_window_growth;
  layout.frequency = frequency;
  return layout;
}

double pair_frequency(double a, double b) {
  if (a < 0.0 || b < 0.0) return -1.0;
  return std::abs(a - b);
}

std::vector<double> negated(const std::vector<double>& v) {
  std::vector<double> out;
  for (double x : v) out.push_back(-x);
  return out;
}

NormReport report_from(const quad::Result<double>& r, const Budget& budget) {
  NormReport rep;
  rep.value = r.value;
  rep.tail_bound = r.error;
  rep.converged = r.converged;
  rep.evaluations = budget.used();
  return rep;
}

// Integral over alpha in [a, b] of profile(alpha), a >= 0, b <= inf.
quad::Result<double> alpha_profile_integral(const std::function<double(double)>& profile, double a,
                                            double b, const std::array<double, 2>& window,
                                            const std::vector<double>& extra_breaks,
                                            const QuadratureConfig& cfg, Budget& budget) {
  const bool lower_tail = !(a > 0.0);
  const bool upper_tail = !std::isfinite(b);
  const double u0 = lower_tail ? std::min(window[0], std::isfinite(b) ? std::log(b) - 4.0 : window[0])
                               : std::log(a);
  const double u1 = upper_tail ? std::max(window[1], a > 0.0 ? std::log(a) + 4.0 : window[1])
                               : std::log(b);
  std::vector<double> breaks_u;
  for (double x : extra_breaks) {
    if (x > 0.0) breaks_u.push_back(std::log(x));
  }
  const int panels = std::max(4, static_cast<int>(std::ceil((u1 - u0) / 2.0)));
  return quad::integrate_alpha<double>(profile, u0, u1, panels,
                                       quad::Tolerance{cfg.abs_tol, cfg.rel_tol}, budget,
                                       lower_tail, upper_tail, breaks_u);
}

double line_sup_of_derivative(const HalfPlaneFunction& f, double alpha, const QuadratureConfig& cfg,
                              Budget& budget, bool& ok) {
  const quad::LineLayout layout = layout_for(f.centers(), f.scales(), alpha, 0.0, cfg);
  auto h = [&](double beta) { return std::abs(f.derivative(cplx(alpha, beta))); };
  quad::SupResult s = quad::sup_on_line(h, layout, sup_policy(cfg), budget);
  if (!s.converged) ok = false;
  return s.value;
}

}  // namespace

PlaneFunction derivative_field(const HalfPlaneFunction& f) {
  PlaneFunction g;
  g.value = [f](double a, double b) { return f.derivative(cplx(a, b)); };
  g.centers = f.centers();
  g.scales = f.scales();
  g.frequency = f.frequency();
  return g;
}

PlaneFunction conj_derivative_field(const HalfPlaneFunction& f) {
  PlaneFunction g;
  g.value = [f](double a, double b) { return std::conj(f.derivative(cplx(a, b))); };
  g.centers = f.centers();
  g.scales = f.scales();
  g.frequency = f.frequency();
  return g;
}

NormReport sup_norm(const HalfPlaneFunction& f, const QuadratureConfig& cfg) {
  cfg.validate();
  Budget budget(cfg.budget);
  const auto window = alpha_window(cfg, f.scales());
  bool ok = true;
  double best = std::abs(f.at_infinity());
  auto line_sup = [&](double alpha, bool boundary) {
    quad::LineLayout layout =
        layout_for(f.centers(), f.scales(), boundary ? 1e-3 * min_scale(f.scales()) : alpha, 0.0, cfg);
    auto h = [&](double beta) {
      return std::abs(boundary ? f.boundary_value(beta) : f(cplx(alpha, beta)));
    };
    quad::SupResult s = quad::sup_on_line(h, layout, sup_policy(cfg), budget);
    if (!s.converged) ok = false;
    return s.value;
  };
  best = std::max(best, line_sup(0.0, true));
  const int n = cfg.alpha_nodes;
  for (int i = 0; i < n; ++i) {
    const double u = window[0] + (window[1] - window[0]) * i / (n - 1);
    best = std::max(best, line_sup(std::exp(u), false));
  }
  NormReport rep;
  rep.value = best;
  rep.tail_bound = cfg.rel_tol * best;
  rep.converged = ok;
  rep.evaluations = budget.used();
  return rep;
}

double derivative_sup(const HalfPlaneFunction& f, double alpha, const QuadratureConfig& cfg) {
  Budget budget(cfg.budget);
  bool ok = true;
  return line_sup_of_derivative(f, alpha, cfg, budget, ok);
}

NormReport besov_partial(const HalfPlaneFunction& f, double a, double b, const QuadratureConfig& cfg) {
  cfg.validate();
  Budget budget(cfg.budget);
  bool ok = true;
  auto profile = [&](double alpha) { return line_sup_of_derivative(f, alpha, cfg, budget, ok); };
  const auto window = alpha_window(cfg, f.scales());
  quad::Result<double> r = alpha_profile_integral(profile, a, b, window, {}, cfg, budget);
  if (r.tail_divergent) {
    throw Error(ErrorCode::NotInBesov, "alpha tail of sup|f'| does not converge for " + f.name());
  }
  NormReport rep = report_from(r, budget);
  rep.converged = rep.converged && ok;
  return rep;
}

NormReport besov_seminorm(const HalfPlaneFunction& f, const QuadratureConfig& cfg) {
  return besov_partial(f, 0.0, std::numeric_limits<double>::infinity(), cfg);
}

NormReport besov_norm(const HalfPlaneFunction& f, const QuadratureConfig& cfg) {
  const NormReport s = sup_norm(f, cfg);
  const NormReport b = besov_seminorm(f, cfg);
  NormReport rep;
  rep.value = s.value + b.value;
  rep.tail_bound = s.tail_bound + b.tail_bound;
  rep.converged = s.converged && b.converged;
  rep.evaluations = s.evaluations + b.evaluations;
  return rep;
}

NormReport e_seminorm(const HalfPlaneFunction& g, const QuadratureConfig& cfg) {
  cfg.validate();
  Budget budget(cfg.budget);
  const auto window = alpha_window(cfg, g.scales());
  bool ok = true;
  double error = 0.0;
  auto value_at = [&](double u) {
    const double alpha = std::exp(u);
    const quad::LineLayout layout = layout_for(g.centers(), g.scales(), alpha, 0.0, cfg);
    auto h = [&](double beta) { return std::abs(g.derivative(cplx(alpha, beta))); };
    quad::Result<double> r = quad::integrate_line<double>(
        h, layout, quad::Tolerance{cfg.abs_tol / alpha, cfg.rel_tol * 0.1}, budget);
    if (r.tail_divergent) {
      throw Error(ErrorCode::NotInE, "beta integral of |g'| diverges for " + g.name());
    }
    if (!r.converged) ok = false;
    error = std::max(error, alpha * r.error);
    return alpha * r.value;
  };
  const int n = cfg.alpha_nodes;
  std::vector<double> us(n), vs(n);
  for (int i = 0; i < n; ++i) {
    us[i] = window[0] + (window[1] - window[0]) * i / (n - 1);
    vs[i] = value_at(us[i]);
  }
  const int k = static_cast<int>(std::max_element(vs.begin(), vs.end()) - vs.begin());
  double best = vs[k];
  if (k > 0 && k + 1 < n) {
    double a = us[k - 1], b = us[k + 1];
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = value_at(x1), f2 = value_at(x2);
    for (int it = 0; it < 40 && b - a > 1e-7; ++it) {
      if (f1 < f2) {
        a = x1; x1 = x2; f1 = f2; x2 = a + gr * (b - a); f2 = value_at(x2);
      } else {
        b = x2; x2 = x1; f2 = f1; x1 = b - gr * (b - a); f1 = value_at(x1);
      }
    }
    best = std::max({best, f1, f2});
  }
  NormReport rep;
  rep.value = best;
  rep.tail_bound = error;
  rep.converged = ok;
  rep.evaluations = budget.used();
  return rep;
}

NormReport w_norm(const PlaneFunction& g, const QuadratureConfig& cfg) {
  cfg.validate();
  Budget budget(cfg.budget);
  bool ok = true;
  std::function<double(double)> profile;
  if (g.sup_profile) {
    profile = g.sup_profile;
  } else {
    profile = [&](double alpha) {
      const quad::LineLayout layout = layout_for(g.centers, g.scales, alpha, 0.0, cfg);
      auto h = [&](double beta) { return std::abs(g.value(alpha, beta)); };
      quad::SupResult s = quad::sup_on_line(h, layout, sup_policy(cfg), budget);
      if (!s.converged) ok = false;
      return s.value;
    };
  }
  std::vector<double> scales = g.scales;
  for (double b : g.alpha_breaks) scales.push_back(b);
  const auto window = alpha_window(cfg, scales);
  quad::Result<double> r = alpha_profile_integral(profile, 0.0, std::numeric_limits<double>::infinity(),
                                                  window, g.alpha_breaks, cfg, budget);
  if (r.tail_divergent) throw Error(ErrorCode::NotInW, "alpha tail of the W-norm diverges");
  NormReport rep = report_from(r, budget);
  rep.converged = rep.converged && ok;
  return rep;
}

NormReport h1_norm(const HalfPlaneFunction& g, const QuadratureConfig& cfg) {
  cfg.validate();
  Budget budget(cfg.budget);
  quad::LineLayout layout = layout_for(g.centers(), g.scales(), min_scale(g.scales()), 0.0, cfg);
  layout.wide = max_scale(g.scales());
  auto h = [&](double s) { return std::abs(g.boundary_value(s)); };
  quad::Result<double> r =
      quad::integrate_line<double>(h, layout, quad::Tolerance{cfg.abs_tol, cfg.rel_tol}, budget);
  if (r.tail_divergent) throw Error(ErrorCode::NotInH1, "boundary values of " + g.name() + " are not integrable");
  return report_from(r, budget);
}

ComplexEstimate green_pairing(const HalfPlaneFunction& g, const HalfPlaneFunction& f,
                              const QuadratureConfig& cfg) {
  cfg.validate();
  Budget budget(cfg.budget);
  const std::vector<double> centers = merge_hints(f.centers(), negated(g.centers()));
  const std::vector<double> scales = merge_hints(f.scales(), g.scales());
  const double freq = pair_frequency(f.frequency(), g.frequency());
  auto integrand = [&](double alpha, double beta) {
    return alpha * g.derivative(cplx(alpha, -beta)) * f.derivative(cplx(alpha, beta));
  };
  auto layout = [&](double alpha) { return layout_for(centers, scales, alpha, freq, cfg); };
  quad::Result<cplx> r = half_plane_integral<cplx>(integrand, layout, alpha_window(cfg, scales), cfg,
                                                   budget, cfg.rel_tol_2d);
  if (r.tail_divergent) throw Error(ErrorCode::NotInE, "pairing integral diverges");
  return {r.value, r.error, r.converged, budget.used()};
}

ComplexEstimate boundary_pairing(const HalfPlaneFunction& g, const HalfPlaneFunction& f,
                                 const QuadratureConfig& cfg) {
  h1_norm(g, cfg);  // throws NotInH1
  Budget budget(cfg.budget);
  const cplx f_inf = f.at_infinity();
  const std::vector<double> centers = merge_hints(f.centers(), negated(g.centers()));
  const std::vector<double> scales = merge_hints(f.scales(), g.scales());
  quad::LineLayout layout = layout_for(centers, scales, min_scale(scales), pair_frequency(f.frequency(), g.frequency()), cfg);
  layout.wide = max_scale(scales);
  auto integrand = [&](double y) { return 0.25 * g.boundary_value(-y) * (f.boundary_value(y) - f_inf); };
  quad::Result<cplx> r = quad::integrate_line<cplx>(
      integrand, layout, quad::Tolerance{cfg.abs_tol, cfg.rel_tol_2d}, budget);
  if (r.tail_divergent) throw Error(ErrorCode::NotInBesov, "boundary pairing integral diverges");
  return {r.value, r.error, r.converged, budget.used()};
}

const char* to_string(ReproduceVariant v) {
  switch (v) {
    case ReproduceVariant::First: return "first";
    case ReproduceVariant::Re: return "re";
    case ReproduceVariant::Im: return "im";
    case ReproduceVariant::Second: return "second";
  }
  return "?";
}

ComplexEstimate reproduce(const HalfPlaneFunction& f, cplx z, ReproduceVariant variant,
                          const QuadratureConfig& cfg) {
  cfg.validate();
  if (z.real() < 0.0) throw Error(ErrorCode::InvalidArgument, "reproduce needs Re z >= 0");
  if (variant == ReproduceVariant::Second && !f.has_second_derivative()) {
    throw Error(ErrorCode::MissingDerivative, "second-derivative formula needs f''");
  }
  Budget budget(cfg.budget);
  const double x = z.real();
  const double y = z.imag();
  std::vector<double> centers = merge_hints(f.centers(), {y});
  std::vector<double> scales = f.scales();
  if (x > 0.0) scales.push_back(x);
  const double freq = f.frequency();
  auto layout = [&](double alpha) {
    quad::LineLayout l = layout_for(centers, scales, alpha, freq, cfg);
    l.wide = std::max(l.wide, x + alpha);
    return l;
  };
  const auto window = alpha_window(cfg, scales);
  quad::Result<cplx> r;
  switch (variant) {
    case ReproduceVariant::First: {
      auto integrand = [&](double a, double b) {
        const cplx w = z + a - cplx(0.0, b);
        return a * f.derivative(cplx(a, b)) / (w * w);
      };
      r = half_plane_integral<cplx>(integrand, layout, window, cfg, budget, cfg.rel_tol_2d);
      r.value *= -2.0 / pi;
      break;
    }
    case ReproduceVariant::Re: {
      auto integrand = [&](double a, double b) {
        const cplx w = z + a - cplx(0.0, b);
        return a * f.derivative(cplx(a, b)).real() / (w * w);
      };
      r = half_plane_integral<cplx>(integrand, layout, window, cfg, budget, cfg.rel_tol_2d);
      r.value *= -4.0 / pi;
      break;
    }
    case ReproduceVariant::Im: {
      auto integrand = [&](double a, double b) {
        const cplx w = z + a - cplx(0.0, b);
        return a * f.derivative(cplx(a, b)).imag() / (w * w);
      };
      r = half_plane_integral<cplx>(integrand, layout, window, cfg, budget, cfg.rel_tol_2d);
      r.value *= cplx(0.0, -4.0 / pi);
      break;
    }
    case ReproduceVariant::Second: {
      auto integrand = [&](double a, double b) {
        const double d = (x + a) * (x + a) + (y - b) * (y - b);
        return a * (x + a) * f.second_derivative(cplx(a, b)) / d;
      };
      r = half_plane_integral<cplx>(integrand, layout, window, cfg, budget, cfg.rel_tol_2d);
      r.value *= 4.0 / pi;
      break;
    }
  }
  if (r.tail_divergent) throw Error(ErrorCode::NotInBesov, "reproducing integral diverges");
  const double factor = variant == ReproduceVariant::First ? 2.0 / pi : 4.0 / pi;
  return {f.at_infinity() + r.value, factor * r.error, r.converged, budget.used()};
}

ComplexEstimate poisson_reconstruct(const HalfPlaneFunction& f, cplx z, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!f.has_boundary()) throw Error(ErrorCode::MissingBoundary, f.name() + " has no boundary values");
  const double x = z.real();
  const double y = z.imag();
  if (!(x > 0.0)) return {f.boundary_value(y), 0.0, true, 1};
  Budget budget(cfg.budget);
  std::vector<double> centers = merge_hints(f.centers(), {y});
  std::vector<double> scales = merge_hints(f.scales(), {x});
  quad::LineLayout layout = layout_for(centers, scales, min_scale(scales), f.frequency(), cfg);
  layout.wide = max_scale(scales);
  auto integrand = [&](double s) {
    return x / (pi * (x * x + (y - s) * (y - s))) * f.boundary_value(s);
  };
  quad::Result<cplx> r = quad::integrate_line<cplx>(
      integrand, layout, quad::Tolerance{cfg.abs_tol, cfg.rel_tol_2d}, budget);
  return {r.value, r.error, r.converged, budget.used()};
}

}  // namespace besov
