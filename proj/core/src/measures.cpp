#include "besov/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "besov/error.hpp"
#include "besov/quadrature.hpp"

namespace besov {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

void require_integrable(const ExpPolyPiece& p) {
  if (!(p.rate.real() > 0.0)) {
    throw Error(ErrorCode::TailDivergence, "exp-poly density with Re rate <= 0 is not integrable");
  }
}

// Moments M_p = int_0^1 x^p exp(-theta x) dx for p = 0..3.
void cell_moments(cplx theta, cplx m[4]) {
  if (std::abs(theta) < 1.0) {
    for (int p = 0; p < 4; ++p) {
      cplx term = 1.0;
      cplx sum = 1.0 / (p + 1.0);
      for (int k = 1; k < 40; ++k) {
        term *= -theta / static_cast<double>(k);
        const cplx add = term / (p + k + 1.0);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
      }
      m[p] = sum;
    }
    return;
  }
  const cplx e = std::exp(-theta);
  m[0] = (1.0 - e) / theta;
  for (int p = 1; p < 4; ++p) m[p] = (static_cast<double>(p) * m[p - 1] - e) / theta;
}

// int t^order exp(-z t) g(t) dt for the piecewise-linear grid density, exact.
cplx grid_laplace(const GridDensity& d, cplx z, int order) {
  const std::size_t n = d.values.size();
  if (n < 2) return 0.0;
  const double h = d.step;
  cplx m[4];
  cell_moments(z * h, m);
  cplx total = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const cplx g0 = d.values[j];
    const cplx g1 = d.values[j + 1];
    if (g0 == cplx(0.0) && g1 == cplx(0.0)) continue;
    const double tj = d.t0 + h * j;
    auto moment = [&](int q) { return g0 * (m[q] - m[q + 1]) + g1 * m[q + 1]; };
    cplx cell;
    if (order == 0) {
      cell = moment(0);
    } else if (order == 1) {
      cell = tj * moment(0) + h * moment(1);
    } else {
      cell = tj * tj * moment(0) + 2.0 * tj * h * moment(1) + h * h * moment(2);
    }
    total += h * std::exp(-z * tj) * cell;
  }
  return order == 1 ? -total : total;
}

cplx piece_laplace(const ExpPolyPiece& p, cplx z, int order) {
  const cplx w = z + p.rate;
  if (!(w.real() > 0.0)) throw Error(ErrorCode::TailDivergence, "Laplace integral of the density diverges at z");
  const double m1 = p.power + 1.0;
  const cplx base = p.coeff * factorial(p.power) * std::exp(-z * p.shift) / std::pow(w, p.power + 1);
  if (order == 0) return base;
  const cplx lead = p.shift + m1 / w;
  if (order == 1) return -base * lead;
  return base * (lead * lead + m1 / (w * w));
}

double piece_end(const ExpPolyPiece& p, double eps) {
  const double rho = p.rate.real();
  const double m = p.power;
  const double target = std::log(eps) + std::lgamma(m + 1.0) - (m + 1.0) * std::log(rho);
  double tau = (m + 1.0) / rho;
  while (m * std::log(tau) - rho * tau > target) tau *= 1.2;
  return p.shift + tau;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<ExpPolyPiece> convolve_pieces(const ExpPolyPiece& p, const ExpPolyPiece& q) {
  const int m = p.power;
  const int n = q.power;
  const cplx a = p.rate;
  const cplx b = q.rate;
  const cplx c = p.coeff * q.coeff * factorial(m) * factorial(n);
  const double shift = p.shift + q.shift;
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(a - b) <= 1e-12 * scale) {
    return {ExpPolyPiece{shift, m + n + 1, a, c / factorial(m + n + 1)}};
  }
  // Partial fractions of c / ((z+a)^{m+1} (z+b)^{n+1}).
  std::vector<ExpPolyPiece> out;
  for (int i = 0; i <= m; ++i) {
    const int j = m + 1 - i;
    const cplx coeff = c * (i % 2 == 0 ? 1.0 : -1.0) * binomial(n + i, i) / std::pow(b - a, n + 1 + i);
    out.push_back(ExpPolyPiece{shift, j - 1, a, coeff / factorial(j - 1)});
  }
  for (int i = 0; i <= n; ++i) {
    const int j = n + 1 - i;
    const cplx coeff = c * (i % 2 == 0 ? 1.0 : -1.0) * binomial(m + i, i) / std::pow(a - b, m + 1 + i);
    out.push_back(ExpPolyPiece{shift, j - 1, b, coeff / factorial(j - 1)});
  }
  return out;
}

}  // namespace

cplx ExpPolyPiece::operator()(double t) const {
  if (t < shift) return 0.0;
  const double tau = t - shift;
  return coeff * std::pow(tau, power) * std::exp(-rate * tau);
}

cplx GridDensity::operator()(double t) const {
  if (values.empty() || t < t0 || t > end()) return 0.0;
  const double x = (t - t0) / step;
  const std::size_t j = std::min(static_cast<std::size_t>(x), values.size() - 2);
  const double f = x - j;
  return (1.0 - f) * values[j] + f * values[j + 1];
}

RadonMeasure RadonMeasure::dirac(double location, cplx weight) {
  if (!(location >= 0.0)) throw Error(ErrorCode::InvalidArgument, "atoms live on [0, inf)");
  RadonMeasure m;
  m.atoms_.push_back({location, weight});
  return m;
}

RadonMeasure RadonMeasure::exp_poly(cplx coeff, int power, cplx rate, double shift) {
  if (power < 0 || !(shift >= 0.0)) throw Error(ErrorCode::InvalidArgument, "exp-poly needs power >= 0, shift >= 0");
  RadonMeasure m;
  m.pieces_.push_back({shift, power, rate, coeff});
  return m;
}

RadonMeasure RadonMeasure::grid(GridDensity density) {
  if (!(density.step > 0.0) || density.values.size() < 2 || !(density.t0 >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "grid density needs step > 0, two values and t0 >= 0");
  }
  if (!std::isfinite(density.tail_bound)) throw Error(ErrorCode::TailDivergence, "grid density without tail bound");
  RadonMeasure m;
  m.grids_.push_back(std::move(density));
  return m;
}

RadonMeasure RadonMeasure::callable(CallableDensity density) {
  if (!density.g || !(density.cutoff > 0.0)) throw Error(ErrorCode::InvalidArgument, "callable density needs g and cutoff > 0");
  if (!std::isfinite(density.tail_bound)) {
    throw Error(ErrorCode::TailDivergence, "density without a finite tail certificate");
  }
  RadonMeasure m;
  m.callables_.push_back(std::move(density));
  return m;
}

RadonMeasure& RadonMeasure::operator+=(const RadonMeasure& other) {
  for (const Atom& a : other.atoms_) {
    auto it = std::find_if(atoms_.begin(), atoms_.end(), [&](const Atom& b) { return b.location == a.location; });
    if (it == atoms_.end()) {
      atoms_.push_back(a);
    } else {
      it->weight += a.weight;
    }
  }
  for (const ExpPolyPiece& p : other.pieces_) {
    auto it = std::find_if(pieces_.begin(), pieces_.end(), [&](const ExpPolyPiece& q) {
      return q.shift == p.shift && q.power == p.power && q.rate == p.rate;
    });
    if (it == pieces_.end()) {
      pieces_.push_back(p);
    } else {
      it->coeff += p.coeff;
    }
  }
  grids_.insert(grids_.end(), other.grids_.begin(), other.grids_.end());
  callables_.insert(callables_.end(), other.callables_.begin(), other.callables_.end());
  return *this;
}

RadonMeasure operator*(cplx c, const RadonMeasure& m) {
  RadonMeasure out = m;
  for (Atom& a : out.atoms_) a.weight *= c;
  for (ExpPolyPiece& p : out.pieces_) p.coeff *= c;
  for (GridDensity& g : out.grids_) {
    for (cplx& v : g.values) v *= c;
    g.tail_bound *= std::abs(c);
  }
  for (CallableDensity& d : out.callables_) {
    auto g = d.g;
    d.g = [g, c](double t) { return c * g(t); };
    d.tail_bound *= std::abs(c);
  }
  return out;
}

cplx RadonMeasure::density(double t) const {
  cplx sum = 0.0;
  for (const ExpPolyPiece& p : pieces_) sum += p(t);
  for (const GridDensity& g : grids_) sum += g(t);
  for (const CallableDensity& d : callables_) {
    if (t >= 0.0 && t <= d.cutoff) sum += d.g(t);
  }
  return sum;
}

double RadonMeasure::declared_tail() const {
  double tail = 0.0;
  for (const GridDensity& g : grids_) tail += g.tail_bound;
  for (const CallableDensity& d : callables_) tail += d.tail_bound;
  return tail;
}

double RadonMeasure::effective_cutoff(double eps) const {
  double end = 0.0;
  for (const ExpPolyPiece& p : pieces_) {
    require_integrable(p);
    end = std::max(end, piece_end(p, eps));
  }
  for (const GridDensity& g : grids_) end = std::max(end, g.end());
  for (const CallableDensity& d : callables_) end = std::max(end, d.cutoff);
  return end;
}

NormReport hp_norm(const RadonMeasure& mu, const QuadratureConfig& cfg) {
  cfg.validate();
  NormReport rep;
  for (const Atom& a : mu.atoms()) rep.value += std::abs(a.weight);
  for (const ExpPolyPiece& p : mu.pieces()) require_integrable(p);
  if (mu.pieces().empty() && !mu.has_numeric_density()) return rep;
  if (mu.pieces().size() == 1 && !mu.has_numeric_density()) {
    const ExpPolyPiece& p = mu.pieces().front();
    rep.value += std::abs(p.coeff) * factorial(p.power) / std::pow(p.rate.real(), p.power + 1);
    return rep;
  }
  Budget budget(cfg.budget);
  const double end = mu.effective_cutoff();
  std::vector<double> breaks{0.0, end};
  for (const ExpPolyPiece& p : mu.pieces()) {
    breaks.push_back(p.shift);
    const double width = 2.0 / p.rate.real();
    for (int k = 1; k <= 200 && p.shift + k * width < end; ++k) breaks.push_back(p.shift + k * width);
  }
  for (const GridDensity& g : mu.grids()) {
    for (std::size_t j = 0; j < g.values.size(); ++j) breaks.push_back(g.t0 + g.step * j);
  }
  for (const CallableDensity& d : mu.callables()) {
    breaks.push_back(d.cutoff);
    for (double b : d.breaks) {
      if (b >= 0.0 && b <= d.cutoff) breaks.push_back(b);
    }
  }
  breaks = sorted_unique(breaks);
  while (!breaks.empty() && breaks.back() > end) breaks.pop_back();
  auto integrand = [&](double t) { return std::abs(mu.density(t)); };
  quad::Result<double> r = quad::integrate<double>(integrand, breaks,
                                                   quad::Tolerance{cfg.abs_tol, cfg.rel_tol}, budget,
                                                   std::max<int>(4000, 4 * breaks.size()));
  rep.value += r.value;
  rep.tail_bound = r.error + mu.declared_tail();
  rep.converged = r.converged;
  rep.evaluations = budget.used();
  return rep;
}

ComplexEstimate laplace(const RadonMeasure& mu, cplx z, const QuadratureConfig& cfg, int order) {
  if (order < 0 || order > 2) throw Error(ErrorCode::InvalidArgument, "laplace order must be 0, 1 or 2");
  if (z.real() < 0.0) throw Error(ErrorCode::InvalidArgument, "laplace needs Re z >= 0");
  ComplexEstimate out;
  for (const Atom& a : mu.atoms()) {
    out.value += std::pow(-a.location, order) * a.weight * std::exp(-z * a.location);
  }
  for (const ExpPolyPiece& p : mu.pieces()) out.value += piece_laplace(p, z, order);
  for (const GridDensity& g : mu.grids()) {
    out.value += grid_laplace(g, z, order);
    out.error += g.tail_bound;
  }
  if (!mu.callables().empty()) {
    Budget budget(cfg.budget);
    for (const CallableDensity& d : mu.callables()) {
      std::vector<double> breaks{0.0, d.cutoff};
      for (double b : d.breaks) {
        if (b > 0.0 && b < d.cutoff) breaks.push_back(b);
      }
      const double omega = std::abs(z.imag());
      if (omega > 0.0) {
        const double width = std::max(d.cutoff / 2000.0, 2.0 * pi / omega);
        for (double t = width; t < d.cutoff; t += width) breaks.push_back(t);
      }
      breaks = sorted_unique(breaks);
      auto integrand = [&](double t) { return std::pow(-t, order) * std::exp(-z * t) * d.g(t); };
      quad::Result<cplx> r = quad::integrate<cplx>(integrand, breaks,
                                                   quad::Tolerance{cfg.abs_tol, cfg.rel_tol}, budget);
      out.value += r.value;
      out.error += r.error + d.tail_bound;
      out.converged = out.converged && r.converged;
    }
    out.evaluations = budget.used();
  }
  return out;
}

HalfPlaneFunction laplace_fn(const RadonMeasure& mu, const QuadratureConfig& cfg) {
  for (const ExpPolyPiece& p : mu.pieces()) require_integrable(p);
  HalfPlaneFunction::Parts parts;
  parts.name = "laplace";
  parts.value = [mu, cfg](cplx z) { return laplace(mu, z, cfg, 0).value; };
  parts.first = [mu, cfg](cplx z) { return laplace(mu, z, cfg, 1).value; };
  parts.second = [mu, cfg](cplx z) { return laplace(mu, z, cfg, 2).value; };
  parts.boundary = [mu, cfg](double s) { return laplace(mu, cplx(0.0, s), cfg, 0).value; };
  cplx at_inf = 0.0;
  std::vector<double> locations;
  std::vector<double> centers;
  std::vector<double> scales;
  for (const Atom& a : mu.atoms()) {
    if (a.location == 0.0) at_inf += a.weight;
    locations.push_back(a.location);
    if (a.location > 0.0) scales.push_back(1.0 / a.location);
  }
  for (const ExpPolyPiece& p : mu.pieces()) {
    locations.push_back(p.shift);
    centers.push_back(-p.rate.imag());
    scales.push_back(p.rate.real());
  }
  for (const GridDensity& g : mu.grids()) {
    scales.push_back(1.0 / g.end());
    scales.push_back(1.0 / g.step);
  }
  for (const CallableDensity& d : mu.callables()) scales.push_back(1.0 / d.cutoff);
  parts.at_infinity = at_inf;
  parts.centers = merge_hints({0.0}, centers);
  parts.scales = scales.empty() ? std::vector<double>{1.0} : merge_hints({}, scales);
  locations = sorted_unique(locations);
  if (mu.has_numeric_density()) {
    parts.frequency = -1.0;
  } else if (locations.size() == 1) {
    parts.frequency = locations.front();
  } else {
    parts.frequency = locations.empty() ? 0.0 : -1.0;
  }
  return HalfPlaneFunction(std::move(parts));
}

namespace {

// Trapezoid convolution of two sampled densities on the grid t_i = i h.
std::vector<cplx> discrete_convolution(const std::vector<cplx>& a, const std::vector<cplx>& b, double h) {
  const std::size_t n = a.size();
  std::vector<cplx> c(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    cplx sum = 0.5 * (a[0] * b[i] + a[i] * b[0]);
    for (std::size_t j = 1; j < i; ++j) sum += a[j] * b[i - j];
    c[i] = h * sum;
  }
  return c;
}

RadonMeasure shifted_numeric(const RadonMeasure& m, const Atom& atom) {
  RadonMeasure out;
  for (GridDensity g : m.grids()) {
    g.t0 += atom.location;
    for (cplx& v : g.values) v *= atom.weight;
    g.tail_bound *= std::abs(atom.weight);
    out += RadonMeasure::grid(std::move(g));
  }
  for (const CallableDensity& d : m.callables()) {
    CallableDensity s;
    const auto g = d.g;
    const double loc = atom.location;
    const cplx w = atom.weight;
    s.g = [g, loc, w](double t) { return t < loc ? cplx(0.0) : w * g(t - loc); };
    s.cutoff = d.cutoff + loc;
    s.tail_bound = d.tail_bound * std::abs(w);
    s.breaks.push_back(loc);
    for (double b : d.breaks) s.breaks.push_back(b + loc);
    out += RadonMeasure::callable(std::move(s));
  }
  return out;
}

RadonMeasure numeric_part(const RadonMeasure& m) {
  RadonMeasure out;
  for (const GridDensity& g : m.grids()) out += RadonMeasure::grid(g);
  for (const CallableDensity& d : m.callables()) out += RadonMeasure::callable(d);
  return out;
}

RadonMeasure pieces_part(const RadonMeasure& m) {
  RadonMeasure out;
  for (const ExpPolyPiece& p : m.pieces()) out += RadonMeasure::exp_poly(p.coeff, p.power, p.rate, p.shift);
  return out;
}

}  // namespace

RadonMeasure convolve(const RadonMeasure& mu, const RadonMeasure& nu, const QuadratureConfig& cfg) {
  cfg.validate();
  for (const ExpPolyPiece& p : mu.pieces()) require_integrable(p);
  for (const ExpPolyPiece& p : nu.pieces()) require_integrable(p);
  RadonMeasure out;
  for (const Atom& a : mu.atoms()) {
    for (const Atom& b : nu.atoms()) out += RadonMeasure::dirac(a.location + b.location, a.weight * b.weight);
    for (const ExpPolyPiece& p : nu.pieces()) {
      out += RadonMeasure::exp_poly(a.weight * p.coeff, p.power, p.rate, p.shift + a.location);
    }
    out += shifted_numeric(nu, a);
  }
  for (const Atom& b : nu.atoms()) {
    for (const ExpPolyPiece& p : mu.pieces()) {
      out += RadonMeasure::exp_poly(b.weight * p.coeff, p.power, p.rate, p.shift + b.location);
    }
    out += shifted_numeric(mu, b);
  }
  for (const ExpPolyPiece& p : mu.pieces()) {
    for (const ExpPolyPiece& q : nu.pieces()) {
      for (const ExpPolyPiece& r : convolve_pieces(p, q)) {
        out += RadonMeasure::exp_poly(r.coeff, r.power, r.rate, r.shift);
      }
    }
  }
  if (mu.has_numeric_density() || nu.has_numeric_density()) {
    // (P1 + N1) * N2 + N1 * P2 on a uniform grid.
    const RadonMeasure n1 = numeric_part(mu);
    const RadonMeasure n2 = numeric_part(nu);
    const RadonMeasure p1 = pieces_part(mu);
    const RadonMeasure p2 = pieces_part(nu);
    const double cut = cfg.abs_tol * 1e-3;
    const double end1 = mu.pieces().empty() && !mu.has_numeric_density() ? 0.0 : (p1 + n1).effective_cutoff(cut);
    const double end2 = nu.pieces().empty() && !nu.has_numeric_density() ? 0.0 : (p2 + n2).effective_cutoff(cut);
    const double end = end1 + end2;
    const std::size_t n = 4096;
    const double h = end / (n - 1);
    std::vector<cplx> a_full(n), a_num(n), b_full(n), b_num(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = h * i;
      a_num[i] = n1.density(t);
      a_full[i] = a_num[i] + p1.density(t);
      b_num[i] = n2.density(t);
      b_full[i] = b_num[i] + p2.density(t);
    }
    std::vector<cplx> c = discrete_convolution(a_full, b_num, h);
    const std::vector<cplx> c2 = discrete_convolution(a_num, b_full, h);
    const std::vector<cplx> c3 = discrete_convolution(a_num, b_num, h);
    for (std::size_t i = 0; i < n; ++i) c[i] += c2[i] - c3[i];
    GridDensity g;
    g.t0 = 0.0;
    g.step = h;
    g.values = std::move(c);
    const double mass1 = hp_norm(mu, cfg).value;
    const double mass2 = hp_norm(nu, cfg).value;
    g.tail_bound = mass1 * nu.declared_tail() + mu.declared_tail() * mass2 + cut * (mass1 + mass2);
    out += RadonMeasure::grid(std::move(g));
  }
  return out;
}

std::vector<double> default_rajchman_grid() {
  std::vector<double> s;
  for (int k = 0; k <= 50; ++k) s.push_back(std::pow(10.0, -1.0 + 5.0 * k / 50.0));
  return s;
}

RajchmanReport rajchman_diagnostic(const RadonMeasure& mu, const std::vector<double>& frequencies,
                                   const QuadratureConfig& cfg) {
  if (frequencies.empty()) throw Error(ErrorCode::InvalidArgument, "empty frequency grid");
  RajchmanReport rep;
  rep.frequencies = frequencies;
  double s_max = 0.0;
  for (double s : frequencies) {
    const double m = std::abs(laplace(mu, cplx(0.0, s), cfg).value);
    rep.moduli.push_back(m);
    rep.overall_sup = std::max(rep.overall_sup, m);
    s_max = std::max(s_max, std::abs(s));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    const double s = std::abs(frequencies[i]);
    if (s < 0.1 * s_max || s <= 0.0) continue;
    rep.last_decade_sup = std::max(rep.last_decade_sup, rep.moduli[i]);
    const double x = std::log(s);
    const double y = std::log(std::max(rep.moduli[i], 1e-300));
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++count;
  }
  if (count >= 2 && sxx * count - sx * sx > 0.0) {
    rep.decay_exponent = -(count * sxy - sx * sy) / (count * sxx - sx * sx);
  }
  rep.rajchman = rep.overall_sup == 0.0 || rep.last_decade_sup <= 0.05 * rep.overall_sup ||
                 rep.decay_exponent > 0.2;
  return rep;
}

}  // namespace besov
