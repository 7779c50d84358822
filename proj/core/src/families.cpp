#include "besov/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "besov/error.hpp"
#include "besov/norms.hpp"
#include "besov/quadrature.hpp"
#include "besov/special.hpp"

namespace besov {

namespace {

cplx ipow(cplx base, int n) {
  cplx out(1.0, 0.0);
  while (n > 0) {
    if (n & 1) out *= base;
    base *= base;
    n >>= 1;
  }
  return out;
}

NormReport to_report(const quad::Result<double>& r, double offset, const Budget& budget) {
  NormReport rep;
  rep.value = offset + r.value;
  rep.tail_bound = r.error;
  rep.converged = r.converged;
  rep.evaluations = budget.used();
  return rep;
}

// Integral over [0, h] of |q| where q is the quadratic through
// (0, y0), (h/2, ym), (h, y1).
double abs_quadratic_integral(double y0, double ym, double y1, double h) {
  const bool same_sign = (y0 >= 0 && ym >= 0 && y1 >= 0) || (y0 <= 0 && ym <= 0 && y1 <= 0);
  if (same_sign) return std::abs(h * (y0 + 4.0 * ym + y1) / 6.0);
  // q(s) = a s^2 + b s + c on s in [0, 1], scaled by h afterwards.
  const double c = y0;
  const double a = 2.0 * y0 - 4.0 * ym + 2.0 * y1;
  const double b = y1 - y0 - a;
  auto antiderivative = [&](double s) { return s * (c + s * (b / 2.0 + s * a / 3.0)); };
  std::vector<double> cuts{0.0};
  if (std::abs(a) < 1e-14 * (std::abs(b) + std::abs(c))) {
    if (b != 0.0) cuts.push_back(-c / b);
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (disc > 0.0) {
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (b + (b >= 0 ? sq : -sq));
      cuts.push_back(q / a);
      if (q != 0.0) cuts.push_back(c / q);
    }
  }
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  double prev = 0.0;
  for (double s : cuts) {
    s = std::clamp(s, 0.0, 1.0);
    if (s <= prev) continue;
    total += std::abs(antiderivative(s) - antiderivative(prev));
    prev = s;
  }
  return h * total;
}

}  // namespace

const char* to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Cayley: return "cayley";
    case FamilyKind::ExpReciprocal: return "exprecip";
    case FamilyKind::RegularizedExp: return "regexp";
    case FamilyKind::Exponential: return "exp";
    case FamilyKind::Resolvent: return "resolvent";
    case FamilyKind::ResolventSquare: return "resolvent2";
    case FamilyKind::Constant: return "const";
  }
  return "?";
}

FamilyKind family_kind_from_string(const std::string& name) {
  for (FamilyKind k : {FamilyKind::Cayley, FamilyKind::ExpReciprocal, FamilyKind::RegularizedExp,
                       FamilyKind::Exponential, FamilyKind::Resolvent, FamilyKind::ResolventSquare,
                       FamilyKind::Constant}) {
    if (name == to_string(k)) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family '" + name + "'");
}

HalfPlaneFunction NamedFamily::function() const {
  switch (kind) {
    case FamilyKind::Cayley: {
      const double n = parameter.real();
      if (parameter.imag() != 0.0 || n < 1.0 || n != std::floor(n)) {
        throw Error(ErrorCode::InvalidArgument, "cayley needs an integer n >= 1");
      }
      return cayley(static_cast<int>(n));
    }
    case FamilyKind::ExpReciprocal:
      if (parameter.imag() != 0.0) throw Error(ErrorCode::InvalidArgument, "exprecip needs real t");
      return exp_reciprocal(parameter.real());
    case FamilyKind::RegularizedExp:
      if (parameter.imag() != 0.0) throw Error(ErrorCode::InvalidArgument, "regexp needs real t");
      return regularized_exp(parameter.real());
    case FamilyKind::Exponential:
      if (parameter.imag() != 0.0) {
        throw Error(ErrorCode::InvalidArgument, "exp needs real a >= 0 to stay bounded");
      }
      return exponential(parameter.real());
    case FamilyKind::Resolvent: return resolvent_function(parameter);
    case FamilyKind::ResolventSquare: return resolvent_square(parameter);
    case FamilyKind::Constant: return constant_function(parameter);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

std::string NamedFamily::label() const {
  std::ostringstream os;
  os << to_string(kind) << ":";
  os.precision(17);
  if (parameter.imag() == 0.0) {
    os << parameter.real();
  } else {
    os << parameter.real() << (parameter.imag() < 0 ? "" : "+") << parameter.imag() << "i";
  }
  return os.str();
}

HalfPlaneFunction cayley(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "cayley needs n >= 1");
  HalfPlaneFunction::Parts p;
  p.name = "cayley" + std::to_string(n);
  p.value = [n](cplx z) { return ipow((z - 1.0) / (z + 1.0), n); };
  p.first = [n](cplx z) {
    const cplx w = z + 1.0;
    return 2.0 * n * ipow((z - 1.0) / w, n - 1) / (w * w);
  };
  p.second = [n](cplx z) {
    const cplx w = z + 1.0;
    const cplx c = (z - 1.0) / w;
    const cplx w3 = w * w * w;
    cplx out = -4.0 * n * ipow(c, n - 1) / w3;
    if (n >= 2) out += 4.0 * n * (n - 1) * ipow(c, n - 2) / (w3 * w);
    return out;
  };
  p.boundary = [n](double s) {
    const cplx z(0.0, s);
    return ipow((z - 1.0) / (z + 1.0), n);
  };
  p.at_infinity = 1.0;
  p.decay_power = 2.0;
  return HalfPlaneFunction(std::move(p));
}

HalfPlaneFunction exp_reciprocal(double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "exprecip needs t > 0");
  HalfPlaneFunction::Parts p;
  std::ostringstream name;
  name << "exprecip" << t;
  p.name = name.str();
  p.value = [t](cplx z) { return std::exp(-t / (z + 1.0)); };
  p.first = [t](cplx z) {
    const cplx w = z + 1.0;
    return t / (w * w) * std::exp(-t / w);
  };
  p.second = [t](cplx z) {
    const cplx w = z + 1.0;
    const cplx w2 = w * w;
    return (t * t / (w2 * w2) - 2.0 * t / (w2 * w)) * std::exp(-t / w);
  };
  p.boundary = [t](double s) { return std::exp(-t / cplx(1.0, s)); };
  p.at_infinity = 1.0;
  p.decay_power = 2.0;
  p.scales = merge_hints({1.0}, {t});
  return HalfPlaneFunction(std::move(p));
}

HalfPlaneFunction regularized_exp(double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "regexp needs t > 0");
  HalfPlaneFunction::Parts p;
  std::ostringstream name;
  name << "regexp" << t;
  p.name = name.str();
  p.value = [t](cplx z) { return z / (z + 1.0) * std::exp(-t / z); };
  p.first = [t](cplx z) {
    const cplx w = z + 1.0;
    return (1.0 / (w * w) + t / (z * w)) * std::exp(-t / z);
  };
  p.second = [t](cplx z) {
    const cplx w = z + 1.0;
    const cplx v = std::exp(-t / z);
    const cplx z2 = z * z;
    const cplx u1 = 1.0 / (w * w);
    const cplx u2 = -2.0 / (w * w * w);
    const cplx v1 = t / z2;
    const cplx v2 = t * t / (z2 * z2) - 2.0 * t / (z2 * z);
    return (u2 + 2.0 * u1 * v1 + z / w * v2) * v;
  };
  p.boundary = [t](double s) {
    if (s == 0.0) return cplx(0.0);
    const cplx z(0.0, s);
    return z / (z + 1.0) * std::exp(cplx(0.0, t / s));
  };
  p.at_infinity = 1.0;
  p.decay_power = 2.0;
  p.scales = merge_hints({1.0}, {t});
  return HalfPlaneFunction(std::move(p));
}

HalfPlaneFunction exponential(double a) {
  if (!(a >= 0.0)) throw Error(ErrorCode::InvalidArgument, "exp needs a >= 0");
  if (a == 0.0) return constant_function(1.0);
  HalfPlaneFunction::Parts p;
  std::ostringstream name;
  name << "exp" << a;
  p.name = name.str();
  p.value = [a](cplx z) { return std::exp(-a * z); };
  p.first = [a](cplx z) { return -a * std::exp(-a * z); };
  p.second = [a](cplx z) { return a * a * std::exp(-a * z); };
  p.boundary = [a](double s) { return std::exp(cplx(0.0, -a * s)); };
  p.at_infinity = 0.0;
  p.scales = {1.0 / a};
  p.frequency = a;
  return HalfPlaneFunction(std::move(p));
}

HalfPlaneFunction resolvent_function(cplx a) {
  if (!(a.real() > 0.0)) throw Error(ErrorCode::InvalidArgument, "resolvent needs Re a > 0");
  HalfPlaneFunction::Parts p;
  std::ostringstream name;
  name << "r" << a;
  p.name = name.str();
  p.value = [a](cplx z) { return 1.0 / (z + a); };
  p.first = [a](cplx z) {
    const cplx w = z + a;
    return -1.0 / (w * w);
  };
  p.second = [a](cplx z) {
    const cplx w = z + a;
    return 2.0 / (w * w * w);
  };
  p.boundary = [a](double s) { return 1.0 / (cplx(0.0, s) + a); };
  p.at_infinity = 0.0;
  p.decay_power = 2.0;
  p.centers = {-a.imag()};
  p.scales = {a.real()};
  return HalfPlaneFunction(std::move(p));
}

HalfPlaneFunction resolvent_square(cplx a) {
  if (!(a.real() > 0.0)) throw Error(ErrorCode::InvalidArgument, "resolvent needs Re a > 0");
  HalfPlaneFunction::Parts p;
  std::ostringstream name;
  name << "r" << a << "^2";
  p.name = name.str();
  p.value = [a](cplx z) {
    const cplx w = z + a;
    return 1.0 / (w * w);
  };
  p.first = [a](cplx z) {
    const cplx w = z + a;
    return -2.0 / (w * w * w);
  };
  p.second = [a](cplx z) {
    const cplx w = z + a;
    const cplx w2 = w * w;
    return 6.0 / (w2 * w2);
  };
  p.boundary = [a](double s) {
    const cplx w = cplx(0.0, s) + a;
    return 1.0 / (w * w);
  };
  p.at_infinity = 0.0;
  p.decay_power = 3.0;
  p.centers = {-a.imag()};
  p.scales = {a.real()};
  return HalfPlaneFunction(std::move(p));
}

double cayley_besov_exact(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "cayley needs n >= 1");
  if (n == 1) return 3.0;
  const double nn = n;
  const double b = nn + std::sqrt(nn * nn - 1.0);
  const double a = 1.0 / b;
  const double coeff =
      nn * std::exp(0.5 * (nn - 1.0) * std::log(nn - 1.0) - 0.5 * (nn + 1.0) * std::log(nn + 1.0));
  return 3.0 + coeff * std::log(b / a) - std::pow((1.0 - a) / (1.0 + a), nn) -
         std::pow((b - 1.0) / (b + 1.0), nn);
}

std::pair<double, double> cayley_besov_bounds(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "cayley needs n >= 1");
  return {1.0 + std::exp(-1.0) * std::log(static_cast<double>(n)), 3.0 + 2.0 * std::log(2.0 * n)};
}

NormReport cayley_hp(int n, const QuadratureConfig& cfg) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "cayley needs n >= 1");
  cfg.validate();
  Budget budget(cfg.budget);
  const int degree = n - 1;
  std::vector<double> breaks{0.0};
  const std::vector<double> roots = laguerre_roots(degree);
  breaks.insert(breaks.end(), roots.begin(), roots.end());
  // Past the last root the integrand decays at least like exp(-t/4).
  const double last = breaks.back();
  for (int k = 1; k <= 40; ++k) breaks.push_back(last + 5.0 * k);
  auto integrand = [degree](double t) { return std::abs(laguerre_scaled(degree, t)); };
  quad::Result<double> r = quad::integrate<double>(
      integrand, breaks, quad::Tolerance{1e-3 * cfg.abs_tol, 1e-2 * cfg.rel_tol}, budget);
  return to_report(r, 1.0, budget);
}

double exprecip_besov_exact(double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "exprecip needs t > 0");
  if (t <= 1.0) return 2.0 - std::exp(-t);
  return 2.0 - std::exp(-1.0) + std::exp(-1.0) * std::log(t);
}

NormReport exprecip_hp(double t, const QuadratureConfig& cfg) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "exprecip needs t > 0");
  cfg.validate();
  Budget budget(cfg.budget);
  // After s = u^2 and x = 2 sqrt(t) u the integral is
  // int_0^inf exp(-x^2 / (4t)) |J_1(x)| dx; exp(-45) ends it.
  const double limit = std::sqrt(180.0 * t);
  std::vector<double> breaks{0.0};
  for (double z : bessel_zeros(1, limit)) breaks.push_back(z);
  breaks.push_back(limit);
  auto integrand = [t](double x) { return std::exp(-x * x / (4.0 * t)) * std::abs(bessel_j(1, x)); };
  quad::Result<double> r = quad::integrate<double>(
      integrand, breaks, quad::Tolerance{1e-3 * cfg.abs_tol, 1e-2 * cfg.rel_tol}, budget);
  return to_report(r, 1.0, budget);
}

std::pair<double, double> regexp_besov_bounds(double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "regexp needs t > 0");
  return {std::exp(-1.0) * std::log(1.0 + t / 4.0),
          3.0 + 2.0 * std::exp(-0.5) * std::log(t + std::sqrt(t * t + 1.0))};
}

NormReport regexp_besov_numeric(double t, const QuadratureConfig& cfg) {
  return besov_norm(regularized_exp(t), cfg);
}

NormReport regexp_hp(double t, const QuadratureConfig& cfg) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "regexp needs t > 0");
  cfg.validate();
  Budget budget(cfg.budget);
  // y(tau) = int_0^tau exp(-(tau - s)) G'(t s) ds, so that
  // K_t(tau) = (1 + t) exp(-tau) + t^2 y(tau). y is propagated exactly in its
  // linear part; the forcing integral of each step uses Gauss-Legendre.
  std::vector<double> gx, gw;
  quad::gauss_legendre(8, gx, gw);
  auto forcing = [&](double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      const double s = mid + half * gx[i];
      sum += gw[i] * std::exp(-(b - s)) * bessel_g_prime(t * s);
    }
    budget.charge(gx.size());
    return half * sum;
  };
  auto kernel = [&](double tau, double y) { return (1.0 + t) * std::exp(-tau) + t * t * y; };
  const double tau_max = 1e4 * std::max(t, 1.0);
  double tau = 0.0;
  double y = 0.0;
  double k0 = kernel(0.0, 0.0);
  double total = 0.0;
  while (tau < tau_max) {
    const double u = t * tau;
    const double period = 2.0 * pi * std::max(1.0, std::sqrt(u));
    const double h = std::min({0.02 * std::max(1.0, tau), period / (64.0 * t), tau_max - tau});
    const double ym = std::exp(-0.5 * h) * y + forcing(tau, tau + 0.5 * h);
    const double y1 = std::exp(-0.5 * h) * ym + forcing(tau + 0.5 * h, tau + h);
    const double km = kernel(tau + 0.5 * h, ym);
    const double k1 = kernel(tau + h, y1);
    total += abs_quadratic_integral(k0, km, k1, h);
    tau += h;
    y = y1;
    k0 = k1;
  }
  // Beyond tau_max, K ~ t^2 G'(t tau) with |G'(u)| ~ pi^{-1/2} u^{-5/4} |cos|;
  // the mean of |cos| is 2/pi.
  const double tail = 8.0 * std::pow(t, 0.75) / (std::pow(pi, 1.5) * std::pow(tau_max, 0.25));
  NormReport rep;
  rep.value = 1.0 + total + tail;
  rep.tail_bound = 0.05 * tail;
  rep.converged = true;
  rep.evaluations = budget.used();
  return rep;
}

NormReport bessel_g_prime_l1(const QuadratureConfig& cfg) {
  cfg.validate();
  Budget budget(cfg.budget);
  // With s = x^2 / 4 the integral becomes 2 int_0^inf |J_2(x)| / x dx.
  const double limit = 2e4;
  std::vector<double> breaks{0.0};
  for (double z : bessel_zeros(2, limit)) breaks.push_back(z);
  auto integrand = [](double x) {
    if (x < 1e-8) return 0.25 * x;
    return 2.0 * std::abs(bessel_j(2, x)) / x;
  };
  quad::Result<double> r = quad::integrate<double>(
      integrand, breaks, quad::Tolerance{1e-3 * cfg.abs_tol, 1e-2 * cfg.rel_tol}, budget);
  const double last = breaks.back();
  const double tail = 8.0 / pi * std::sqrt(2.0 / pi) / std::sqrt(last);
  NormReport rep = to_report(r, tail, budget);
  rep.tail_bound += tail / last;
  return rep;
}

std::vector<GapRow> gap_table(FamilyKind kind, const std::vector<double>& parameters,
                              const QuadratureConfig& cfg) {
  std::vector<GapRow> rows;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double param : parameters) {
    GapRow row;
    row.parameter = param;
    NormReport besov, hp;
    switch (kind) {
      case FamilyKind::Cayley: {
        const int n = static_cast<int>(std::lround(param));
        if (n < 1 || std::abs(param - n) > 0) {
          throw Error(ErrorCode::InvalidArgument, "cayley parameters must be integers >= 1");
        }
        row.besov_exact = cayley_besov_exact(n);
        std::tie(row.besov_lower, row.besov_upper) = cayley_besov_bounds(n);
        besov = besov_norm(cayley(n), cfg);
        hp = cayley_hp(n, cfg);
        break;
      }
      case FamilyKind::ExpReciprocal:
        row.besov_exact = exprecip_besov_exact(param);
        row.besov_lower = row.besov_upper = row.besov_exact;
        besov = besov_norm(exp_reciprocal(param), cfg);
        hp = exprecip_hp(param, cfg);
        break;
      case FamilyKind::RegularizedExp:
        row.besov_exact = nan;
        std::tie(row.besov_lower, row.besov_upper) = regexp_besov_bounds(param);
        besov = regexp_besov_numeric(param, cfg);
        hp = regexp_hp(param, cfg);
        break;
      default:
        throw Error(ErrorCode::InvalidArgument, "gap tables exist for cayley, exprecip and regexp");
    }
    row.besov_numeric = besov.value;
    row.hp = hp.value;
    row.ratio = hp.value / besov.value;
    row.converged = besov.converged && hp.converged;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace besov
