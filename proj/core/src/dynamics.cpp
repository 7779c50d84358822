#include "besov/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "besov/error.hpp"
#include "besov/norms.hpp"
#include "besov/quadrature.hpp"

namespace besov {

namespace {

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

Matrix inverse_shift(const MatrixOperator& a, cplx w) {
  Eigen::PartialPivLU<Matrix> lu(w * identity(a.dim()) + a.matrix());
  return lu.solve(identity(a.dim()));
}

quad::LineLayout inversion_layout(const MatrixOperator& a, const std::vector<double>& centers, double sigma,
                                  double frequency, const QuadratureConfig& cfg) {
  quad::LineLayout layout;
  layout.centers = centers;
  layout.scale = sigma;
  double wide = sigma;
  for (Eigen::Index i = 0; i < a.dim(); ++i) wide = std::max(wide, sigma + a.spectrum()(i).real());
  layout.wide = wide;
  layout.window = cfg.beta_window_init;
  layout.growth = cfg.beta_window_growth;
  layout.frequency = frequency;
  return layout;
}

// Breakpoints on [-n, n]: the centres, a geometric ladder away from them and,
// for oscillating integrands, one point per half period.
std::vector<double> truncation_breaks(double n, const std::vector<double>& centers, double scale,
                                      double frequency) {
  std::vector<double> b{-n, n};
  for (double c : centers) {
    for (double d = 0.0; ; d = (d == 0.0 ? scale : 2.0 * d)) {
      if (c + d < n && c + d > -n) b.push_back(c + d);
      if (c - d < n && c - d > -n) b.push_back(c - d);
      if (d > 2.0 * n) break;
    }
  }
  if (frequency > 0.0) {
    const double step = pi / frequency;
    for (double x = -n + step; x < n; x += step) b.push_back(x);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= lx.size();
  my /= lx.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

template <class Integrand, class Regular>
TruncationReport truncations(Integrand&& integrand, Regular&& regular, const Matrix& singular_limit,
                             const Matrix& reference, const std::vector<double>& n_grid,
                             const quad::LineLayout& layout, const QuadratureConfig& cfg, Budget& budget) {
  TruncationReport rep;
  const quad::Tolerance tol{1e-3 * cfg.abs_tol, 1e-2 * cfg.rel_tol};
  for (double n : n_grid) {
    if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "truncation levels must be positive");
    const std::vector<double> breaks = truncation_breaks(n, layout.centers, layout.scale, layout.frequency);
    const std::size_t panels = std::max<std::size_t>(4000, 8 * breaks.size());
    Matrix raw = quad::integrate<Matrix>(integrand, breaks, tol, budget, panels).value;
    auto fejer = [&](double beta) { return Matrix((1.0 - std::abs(beta) / n) * integrand(beta)); };
    Matrix ces = quad::integrate<Matrix>(fejer, breaks, tol, budget, panels).value;
    rep.n.push_back(n);
    rep.raw_error.push_back(operator_norm(raw - reference));
    rep.cesaro_error.push_back(operator_norm(ces - reference));
    rep.raw.push_back(std::move(raw));
    rep.cesaro.push_back(std::move(ces));
  }
  quad::Result<Matrix> r = quad::integrate_line<Matrix>(regular, layout, tol, budget);
  rep.limit = singular_limit + r.value;
  rep.limit_error = operator_norm(rep.limit - reference);
  rep.slope = fitted_slope(rep.n, rep.raw_error);
  return rep;
}

}  // namespace

Matrix evolve(const HalfPlaneFunction& f, const MatrixOperator& a, cplx z, const QuadratureConfig& cfg) {
  if (z == cplx(0.0)) return f(cplx(0.0)) * identity(a.dim());
  if (z.imag() == 0.0) {
    if (!(z.real() > 0.0)) throw Error(ErrorCode::SectorViolation, "negative time");
    return apply_calculus(rescale(f, z.real()), a, cfg).value;
  }
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    const cplx w = z * a.spectrum()(i);
    if (w.real() < -1e-10 * (1.0 + std::abs(w))) {
      throw Error(ErrorCode::SectorViolation, "z sigma(A) leaves the closed right half-plane");
    }
  }
  return apply_calculus(f, MatrixOperator(z * a.matrix()), cfg).value;
}

ContinuityReport continuity_scan(const HalfPlaneFunction& f, const MatrixOperator& a, const std::vector<double>& t,
                                 const QuadratureConfig& cfg) {
  ContinuityReport rep;
  rep.t = t;
  Matrix prev;
  for (std::size_t k = 0; k < t.size(); ++k) {
    Matrix cur = evolve(f, a, t[k], cfg);
    if (k > 0) {
      rep.jumps.push_back(operator_norm(cur - prev));
      rep.max_jump = std::max(rep.max_jump, rep.jumps.back());
    }
    prev = std::move(cur);
  }
  return rep;
}

DerivativeReport short_time_derivative(const HalfPlaneFunction& f, const MatrixOperator& a, const Vector& x,
                                       const QuadratureConfig& cfg) {
  if (x.size() != a.dim()) throw Error(ErrorCode::InvalidArgument, "vector size does not match the matrix");
  besov_norm(derivative_function(f), cfg);
  DerivativeReport rep;
  const cplx f0 = f(cplx(0.0));
  // (f(t.) - f(0)) / t as one function keeps the subtraction out of the
  // matrix result.
  for (int k = 3; k <= 12; ++k) {
    const double t = std::ldexp(1.0, -k);
    const HalfPlaneFunction q = cplx(1.0 / t) * (rescale(f, t) - constant_function(f0));
    rep.t.push_back(t);
    rep.quotients.push_back(apply_calculus(q, a, cfg).value * x);
  }
  const std::size_t m = rep.quotients.size();
  rep.limit = 2.0 * rep.quotients[m - 1] - rep.quotients[m - 2];
  rep.target = f.derivative(cplx(0.0)) * (a.matrix() * x);
  const double scale = rep.target.norm();
  rep.rel_error = (rep.limit - rep.target).norm() / (scale > 0.0 ? scale : 1.0);
  return rep;
}

std::vector<double> default_decay_grid() {
  std::vector<double> t;
  for (int k = -4; k <= 20; ++k) t.push_back(std::pow(10.0, k / 2.0));
  return t;
}

DecayReport long_time_decay(const HalfPlaneFunction& f, const MatrixOperator& a, const std::vector<double>& t,
                            const QuadratureConfig& cfg, double tol) {
  if (std::abs(f.at_infinity()) > 0.0) throw Error(ErrorCode::InvalidArgument, "decay needs f(inf) = 0");
  DecayReport rep;
  rep.t = t;
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    if (std::abs(a.spectrum()(i)) <= 1e-10) rep.zero_in_spectrum = true;
  }
  rep.f0 = std::abs(f(cplx(0.0)));
  rep.omega = a.min_real_part() - 1e-6;
  for (double s : t) rep.norms.push_back(operator_norm(evolve(f, a, s, cfg)));
  rep.plateau = std::all_of(rep.norms.begin(), rep.norms.end(), [&](double v) { return v >= rep.f0 - tol; });
  rep.decays = !rep.norms.empty() && rep.norms.back() < tol;
  rep.holds = rep.zero_in_spectrum ? (rep.plateau && !rep.decays) : rep.decays;
  return rep;
}

InversionReport complex_inversion(const HalfPlaneFunction& f, const MatrixOperator& a, double sigma,
                                  const std::vector<double>& n_grid, const QuadratureConfig& cfg) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
  if (!f.has_boundary()) throw Error(ErrorCode::MissingBoundary, f.name() + " has no boundary values");
  Budget budget(cfg.budget);
  const HalfPlaneFunction target = shift(derivative_function(f), sigma);
  InversionReport rep;
  try {
    rep.reference = oracle_apply(target, a);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotDiagonalizable) throw;
    rep.reference = apply_calculus(target, a, cfg).value;
  }
  const Eigen::Index n = a.dim();
  const std::vector<double> centers = merge_hints(f.centers(), a.spectral_centers());
  const quad::LineLayout layout = inversion_layout(a, centers, sigma, f.frequency(), cfg);
  const quad::Tolerance tol{1e-3 * cfg.abs_tol, 1e-2 * cfg.rel_tol};

  auto squared = [&](double beta) {
    const Matrix r = inverse_shift(a, cplx(sigma, -beta));
    return Matrix((-1.0 / (2.0 * pi)) * f.boundary_value(beta) * (r * r));
  };
  rep.squared = quad::integrate_line<Matrix>(squared, layout, tol, budget).value;
  rep.squared_error = operator_norm(rep.squared - rep.reference);

  auto first = [&](double beta) {
    return Matrix((1.0 / (2.0 * pi)) * f.derivative(cplx(0.0, beta)) * inverse_shift(a, cplx(sigma, -beta)));
  };
  // (s - i b + A)^-1 = (s - i b)^-1 - (s - i b)^-1 A (s - i b + A)^-1; the
  // first term integrates to f'(sigma) by Cauchy's formula.
  auto regular = [&](double beta) {
    const cplx w(sigma, -beta);
    return Matrix((-1.0 / (2.0 * pi)) * f.derivative(cplx(0.0, beta)) / w * a.matrix() * inverse_shift(a, w));
  };
  rep.first = truncations(first, regular, f.derivative(cplx(sigma, 0.0)) * identity(n), rep.reference, n_grid,
                          layout, cfg, budget);
  return rep;
}

InversionReport semigroup_inversion(const MatrixOperator& a, double t, double sigma,
                                    const std::vector<double>& n_grid, const QuadratureConfig& cfg) {
  if (!(sigma > 0.0) || !(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "t and sigma must be positive");
  Budget budget(cfg.budget);
  const Eigen::Index n = a.dim();
  InversionReport rep;
  rep.reference = matrix_exponential(-t * a.matrix());
  std::vector<double> centers;
  for (double c : a.spectral_centers()) centers.push_back(-c);
  const quad::LineLayout layout = inversion_layout(a, merge_hints({}, centers), sigma, t, cfg);
  const quad::Tolerance tol{1e-3 * cfg.abs_tol, 1e-2 * cfg.rel_tol};
  const double growth = std::exp(sigma * t);

  auto squared = [&](double beta) {
    const Matrix r = inverse_shift(a, cplx(sigma, beta));
    return Matrix((growth / (2.0 * pi * t)) * std::polar(1.0, t * beta) * (r * r));
  };
  rep.squared = quad::integrate_line<Matrix>(squared, layout, tol, budget).value;
  rep.squared_error = operator_norm(rep.squared - rep.reference);

  auto first = [&](double beta) {
    return Matrix((growth / (2.0 * pi)) * std::polar(1.0, t * beta) * inverse_shift(a, cplx(sigma, beta)));
  };
  // The scalar part (s + i b)^-1 integrates to 1 for t > 0.
  auto regular = [&](double beta) {
    const cplx w(sigma, beta);
    return Matrix((-growth / (2.0 * pi)) * std::polar(1.0, t * beta) / w * a.matrix() * inverse_shift(a, w));
  };
  rep.first = truncations(first, regular, identity(n), rep.reference, n_grid, layout, cfg, budget);
  return rep;
}

std::vector<double> norm_continuity_diagnostic(const HalfPlaneFunction& f, const MatrixOperator& a, double alpha,
                                               const std::vector<double>& beta) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  std::vector<double> out;
  for (double b : beta) {
    out.push_back(std::abs(f(cplx(alpha, b))) * operator_norm(inverse_shift(a, cplx(alpha, -b))));
  }
  return out;
}

double holomorphy_residual(const HalfPlaneFunction& f, const MatrixOperator& a, const std::vector<cplx>& points,
                           double h, const QuadratureConfig& cfg) {
  double worst = 0.0;
  for (cplx z : points) {
    const Matrix dx = (evolve(f, a, z + h, cfg) - evolve(f, a, z - h, cfg)) / (2.0 * h);
    const Matrix dy = (evolve(f, a, z + cplx(0.0, h), cfg) - evolve(f, a, z - cplx(0.0, h), cfg)) / (2.0 * h);
    const double scale = operator_norm(dx);
    worst = std::max(worst, operator_norm(dx + cplx(0.0, 1.0) * dy) / (scale > 0.0 ? scale : 1.0));
  }
  return worst;
}

}  // namespace besov
