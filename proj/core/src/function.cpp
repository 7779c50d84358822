#include "besov/function.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "besov/error.hpp"

namespace besov {

namespace {

double combine_sum_frequency(double a, double b) {
  if (a == b) return a;
  return -1.0;
}

double combine_product_frequency(double a, double b) {
  if (a < 0.0 || b < 0.0) return -1.0;
  return a + b;
}

}  // namespace

namespace {

void copy_hints(HalfPlaneFunction::Parts& p, const HalfPlaneFunction& f, const HalfPlaneFunction& g,
                double frequency) {
  p.constant = f.is_constant() && g.is_constant();
  if (f.is_constant() || g.is_constant()) {
    const HalfPlaneFunction& other = f.is_constant() ? g : f;
    p.decay_power = other.decay_power();
    p.centers = other.centers();
    p.scales = other.scales();
    p.frequency = other.frequency();
    return;
  }
  p.decay_power = std::min(f.decay_power(), g.decay_power());
  p.centers = merge_hints(f.centers(), g.centers());
  p.scales = merge_hints(f.scales(), g.scales());
  p.frequency = frequency;
}

}  // namespace

std::vector<double> merge_hints(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a);
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double x, double y) { return std::abs(x - y) <= 1e-12 * (1 + std::abs(x)); }),
            out.end());
  return out;
}

HalfPlaneFunction::HalfPlaneFunction() : HalfPlaneFunction(constant_function(0.0)) {}

HalfPlaneFunction::HalfPlaneFunction(Parts parts) {
  if (!parts.value) throw Error(ErrorCode::InvalidArgument, "function needs an evaluator");
  if (parts.centers.empty()) parts.centers.push_back(0.0);
  if (parts.scales.empty()) parts.scales.push_back(1.0);
  p_ = std::make_shared<const Parts>(std::move(parts));
}

cplx HalfPlaneFunction::operator()(cplx z) const {
  if (z.real() > 0.0) return p_->value(z);
  if (p_->boundary) return p_->boundary(z.imag());
  return p_->value(cplx(1e-6, z.imag()));
}

cplx HalfPlaneFunction::derivative(cplx z) const {
  if (p_->first) return p_->first(z);
  return cauchy_derivative(*this, z, 1);
}

cplx HalfPlaneFunction::second_derivative(cplx z) const {
  if (p_->second) return p_->second(z);
  if (p_->first) return cauchy_derivative(p_->first, z, 1);
  return cauchy_derivative(*this, z, 2);
}

cplx HalfPlaneFunction::boundary_value(double s) const {
  if (p_->boundary) return p_->boundary(s);
  return p_->value(cplx(1e-6, s));
}

HalfPlaneFunction constant_function(cplx c) {
  HalfPlaneFunction::Parts p;
  p.name = "const";
  p.value = [c](cplx) { return c; };
  p.first = [](cplx) { return cplx(0.0); };
  p.second = [](cplx) { return cplx(0.0); };
  p.boundary = [c](double) { return c; };
  p.at_infinity = c;
  p.decay_power = 0.0;
  p.constant = true;
  return HalfPlaneFunction(std::move(p));
}

HalfPlaneFunction operator+(const HalfPlaneFunction& f, const HalfPlaneFunction& g) {
  HalfPlaneFunction::Parts p;
  p.name = "(" + f.name() + "+" + g.name() + ")";
  p.value = [f, g](cplx z) { return f(z) + g(z); };
  p.first = [f, g](cplx z) { return f.derivative(z) + g.derivative(z); };
  p.second = [f, g](cplx z) { return f.second_derivative(z) + g.second_derivative(z); };
  p.at_infinity = f.at_infinity() + g.at_infinity();
  if (f.has_boundary() && g.has_boundary()) {
    p.boundary = [f, g](double s) { return f.boundary_value(s) + g.boundary_value(s); };
  }
  copy_hints(p, f, g, combine_sum_frequency(f.frequency(), g.frequency()));
  return HalfPlaneFunction(std::move(p));
}

HalfPlaneFunction operator*(cplx c, const HalfPlaneFunction& f) {
  HalfPlaneFunction::Parts p = f.parts();
  p.name = "scale(" + f.name() + ")";
  p.value = [c, f](cplx z) { return c * f(z); };
  p.first = [c, f](cplx z) { return c * f.derivative(z); };
  p.second = [c, f](cplx z) { return c * f.second_derivative(z); };
  p.at_infinity = c * f.at_infinity();
  if (f.has_boundary()) p.boundary = [c, f](double s) { return c * f.boundary_value(s); };
  return HalfPlaneFunction(std::move(p));
}

HalfPlaneFunction operator-(const HalfPlaneFunction& f, const HalfPlaneFunction& g) {
  return f + cplx(-1.0) * g;
}

HalfPlaneFunction operator*(const HalfPlaneFunction& f, const HalfPlaneFunction& g) {
  HalfPlaneFunction::Parts p;
  p.name = "(" + f.name() + "*" + g.name() + ")";
  p.value = [f, g](cplx z) { return f(z) * g(z); };
  p.first = [f, g](cplx z) { return f.derivative(z) * g(z) + f(z) * g.derivative(z); };
  p.second = [f, g](cplx z) {
    return f.second_derivative(z) * g(z) + 2.0 * f.derivative(z) * g.derivative(z) +
           f(z) * g.second_derivative(z);
  };
  p.at_infinity = f.at_infinity() * g.at_infinity();
  if (f.has_boundary() && g.has_boundary()) {
    p.boundary = [f, g](double s) { return f.boundary_value(s) * g.boundary_value(s); };
  }
  copy_hints(p, f, g, combine_product_frequency(f.frequency(), g.frequency()));
  return HalfPlaneFunction(std::move(p));
}

HalfPlaneFunction shift(const HalfPlaneFunction& f, cplx a) {
  if (a.real() < 0.0) throw Error(ErrorCode::InvalidArgument, "shift needs Re a >= 0");
  HalfPlaneFunction::Parts p = f.parts();
  p.name = "shift(" + f.name() + ")";
  p.value = [f, a](cplx z) { return f(z + a); };
  p.first = [f, a](cplx z) { return f.derivative(z + a); };
  p.second = [f, a](cplx z) { return f.second_derivative(z + a); };
  if (a.real() > 0.0) {
    p.boundary = [f, a](double s) { return f(a + cplx(0.0, s)); };
  } else if (f.has_boundary()) {
    p.boundary = [f, a](double s) { return f.boundary_value(s + a.imag()); };
  }
  for (double& c : p.centers) c -= a.imag();
  for (double& s : p.scales) s += a.real();
  return HalfPlaneFunction(std::move(p));
}

HalfPlaneFunction rescale(const HalfPlaneFunction& f, double b) {
  if (!(b > 0.0)) throw Error(ErrorCode::InvalidArgument, "rescale needs b > 0");
  HalfPlaneFunction::Parts p = f.parts();
  p.name = "rescale(" + f.name() + ")";
  p.value = [f, b](cplx z) { return f(b * z); };
  p.first = [f, b](cplx z) { return b * f.derivative(b * z); };
  p.second = [f, b](cplx z) { return b * b * f.second_derivative(b * z); };
  if (f.has_boundary()) p.boundary = [f, b](double s) { return f.boundary_value(b * s); };
  for (double& c : p.centers) c /= b;
  for (double& s : p.scales) s /= b;
  if (p.frequency > 0.0) p.frequency *= b;
  return HalfPlaneFunction(std::move(p));
}

HalfPlaneFunction subtract_infinity(const HalfPlaneFunction& f) {
  if (f.at_infinity() == cplx(0.0)) return f;
  HalfPlaneFunction::Parts p = f.parts();
  const cplx c = f.at_infinity();
  p.name = f.name() + "-inf";
  p.value = [f, c](cplx z) { return f(z) - c; };
  if (f.has_boundary()) p.boundary = [f, c](double s) { return f.boundary_value(s) - c; };
  p.first = [f](cplx z) { return f.derivative(z); };
  p.second = [f](cplx z) { return f.second_derivative(z); };
  p.at_infinity = 0.0;
  return HalfPlaneFunction(std::move(p));
}

HalfPlaneFunction derivative_function(const HalfPlaneFunction& f) {
  HalfPlaneFunction::Parts p = f.parts();
  p.name = "d(" + f.name() + ")";
  p.value = [f](cplx z) { return f.derivative(z); };
  p.first = [f](cplx z) { return f.second_derivative(z); };
  p.second = [f](cplx z) {
    return cauchy_derivative([f](cplx w) { return f.second_derivative(w); }, z, 1);
  };
  p.at_infinity = 0.0;
  if (f.has_derivative()) {
    p.boundary = [f](double s) { return f.derivative(cplx(0.0, s)); };
  } else {
    p.boundary = nullptr;
  }
  return HalfPlaneFunction(std::move(p));
}

cplx cauchy_derivative(const HalfPlaneFunction::Map& f, cplx z, int order,
                       const CauchyPolicy& policy) {
  if (order < 1 || order > 2) throw Error(ErrorCode::InvalidArgument, "order must be 1 or 2");
  if (!(z.real() > policy.min_real_part)) {
    throw Error(ErrorCode::TooCloseToBoundary, "Cauchy circle needs Re z > 0");
  }
  const double radius = 0.5 * std::min(z.real(), 1.0);
  auto estimate = [&](int n) {
    cplx sum = 0.0;
    double scale = 0.0;
    for (int j = 0; j < n; ++j) {
      const double theta = 2.0 * pi * j / n;
      const cplx w = std::polar(1.0, theta);
      const cplx v = f(z + radius * w);
      scale = std::max(scale, std::abs(v));
      sum += v * std::pow(std::conj(w), order);
    }
    const double factorial = order == 1 ? 1.0 : 2.0;
    return std::pair<cplx, double>(factorial * sum / (n * std::pow(radius, order)),
                                   factorial * scale / std::pow(radius, order));
  };
  int n = policy.nodes;
  auto [prev, scale] = estimate(n);
  for (int k = 0; k < policy.max_doublings; ++k) {
    n *= 2;
    auto [next, next_scale] = estimate(n);
    if (std::abs(next - prev) <= policy.rel_tol * std::abs(next) + 1e-14 * next_scale) return next;
    prev = next;
  }
  return prev;
}

cplx cauchy_derivative(const HalfPlaneFunction& f, cplx z, int order, const CauchyPolicy& policy) {
  return cauchy_derivative([&f](cplx w) { return f(w); }, z, order, policy);
}

}  // namespace besov
