#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "besov/types.hpp"

namespace besov {

struct CauchyPolicy {
  int nodes = 128;
  double rel_tol = 1e-10;
  int max_doublings = 6;
  double min_real_part = 1e-12;
};

// A holomorphic function on the open right half-plane, given by evaluators
// for f, f', f'', f(inf) and the boundary values on the imaginary axis.
//
// The layout hints (centers, scales, frequency) do not change values; they
// tell the quadratures where the function has structure:
//   centers   - imaginary parts near which f' peaks or oscillates fastest
//   scales    - characteristic real-part scales (e.g. distance of poles)
//   frequency - f behaves like exp(-w z) times a tame factor as |Im z| grows;
//               0 means no oscillation, a negative value means unknown.
class HalfPlaneFunction {
 public:
  using Map = std::function<cplx(cplx)>;
  using BoundaryMap = std::function<cplx(double)>;

  struct Parts {
    std::string name;
    Map value;
    Map first;
    Map second;
    cplx at_infinity{0.0, 0.0};
    BoundaryMap boundary;
    double decay_power = 0.0;  // |f'(a+ib)| <~ |b|^-p for large |b|; 0 when unknown
    std::vector<double> centers{0.0};
    std::vector<double> scales{1.0};
    double frequency = 0.0;
    bool constant = false;  // f' vanishes identically; sums and products keep the other hints
  };

  HalfPlaneFunction();
  explicit HalfPlaneFunction(Parts parts);

  // Value at z; on Re z <= 0 the boundary map is used when present, else the
  // value just inside the half-plane.
  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
  cplx second_derivative(cplx z) const;
  cplx boundary_value(double s) const;

  bool has_derivative() const { return static_cast<bool>(p_->first); }
  bool has_second_derivative() const { return static_cast<bool>(p_->second); }
  bool has_boundary() const { return static_cast<bool>(p_->boundary); }

  cplx at_infinity() const { return p_->at_infinity; }
  const std::string& name() const { return p_->name; }
  const std::vector<double>& centers() const { return p_->centers; }
  const std::vector<double>& scales() const { return p_->scales; }
  double frequency() const { return p_->frequency; }
  double decay_power() const { return p_->decay_power; }
  bool is_constant() const { return p_->constant; }
  const Parts& parts() const { return *p_; }

 private:
  std::shared_ptr<const Parts> p_;
};

HalfPlaneFunction operator+(const HalfPlaneFunction& f, const HalfPlaneFunction& g);
HalfPlaneFunction operator-(const HalfPlaneFunction& f, const HalfPlaneFunction& g);
HalfPlaneFunction operator*(const HalfPlaneFunction& f, const HalfPlaneFunction& g);
HalfPlaneFunction operator*(cplx c, const HalfPlaneFunction& f);

HalfPlaneFunction constant_function(cplx c);

// (T f)(z) = f(z + a), Re a >= 0.
HalfPlaneFunction shift(const HalfPlaneFunction& f, cplx a);
// (S f)(z) = f(b z), b > 0.
HalfPlaneFunction rescale(const HalfPlaneFunction& f, double b);
// f - f(inf).
HalfPlaneFunction subtract_infinity(const HalfPlaneFunction& f);
// z -> f'(z) as a function in its own right.
HalfPlaneFunction derivative_function(const HalfPlaneFunction& f);

// Trapezoidal rule for Cauchy's integral on a circle of radius min(Re z, 1)/2,
// doubling the node count until two successive values agree.
cplx cauchy_derivative(const HalfPlaneFunction::Map& f, cplx z, int order,
                       const CauchyPolicy& policy = {});
cplx cauchy_derivative(const HalfPlaneFunction& f, cplx z, int order,
                       const CauchyPolicy& policy = {});

std::vector<double> merge_hints(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace besov
