#pragma once

#include <functional>
#include <vector>

#include "besov/config.hpp"
#include "besov/function.hpp"

namespace besov {

struct Atom {
  double location = 0.0;
  cplx weight{1.0, 0.0};
};

// coeff * (t - shift)^power * exp(-rate (t - shift)) for t >= shift.
// Closed under convolution and with exact Laplace transforms.
struct ExpPolyPiece {
  double shift = 0.0;
  int power = 0;
  cplx rate{1.0, 0.0};
  cplx coeff{1.0, 0.0};

  cplx operator()(double t) const;
};

// Piecewise-linear density on [t0, t0 + step * (values.size() - 1)], zero
// elsewhere. tail_bound certifies the L1 mass of whatever the grid omits.
struct GridDensity {
  double t0 = 0.0;
  double step = 1.0;
  std::vector<cplx> values;
  double tail_bound = 0.0;

  cplx operator()(double t) const;
  double end() const { return t0 + step * (values.size() - 1); }
};

// Generic density supported on [0, cutoff]; the constructor's caller
// certifies that the mass beyond cutoff is at most tail_bound.
struct CallableDensity {
  std::function<cplx(double)> g;
  double cutoff = 0.0;
  double tail_bound = 0.0;
  std::vector<double> breaks;
};

class RadonMeasure {
 public:
  RadonMeasure() = default;

  static RadonMeasure dirac(double location, cplx weight = 1.0);
  static RadonMeasure exp_poly(cplx coeff, int power, cplx rate, double shift = 0.0);
  static RadonMeasure grid(GridDensity density);
  static RadonMeasure callable(CallableDensity density);

  RadonMeasure& operator+=(const RadonMeasure& other);
  friend RadonMeasure operator+(RadonMeasure a, const RadonMeasure& b) { return a += b; }
  friend RadonMeasure operator-(RadonMeasure a, const RadonMeasure& b) { return a += cplx(-1.0) * b; }
  friend RadonMeasure operator*(cplx c, const RadonMeasure& m);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<ExpPolyPiece>& pieces() const { return pieces_; }
  const std::vector<GridDensity>& grids() const { return grids_; }
  const std::vector<CallableDensity>& callables() const { return callables_; }

  bool has_numeric_density() const { return !grids_.empty() || !callables_.empty(); }
  // Sum of all density parts at t.
  cplx density(double t) const;
  // Declared L1 mass left out by numeric densities.
  double declared_tail() const;
  // Point beyond which every density part has mass below eps (relative).
  double effective_cutoff(double eps = 1e-17) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<ExpPolyPiece> pieces_;
  std::vector<GridDensity> grids_;
  std::vector<CallableDensity> callables_;
};

NormReport hp_norm(const RadonMeasure& mu, const QuadratureConfig& cfg);

// Derivative order 0, 1, 2 of the Laplace transform at z, Re z >= 0.
ComplexEstimate laplace(const RadonMeasure& mu, cplx z, const QuadratureConfig& cfg, int order = 0);
HalfPlaneFunction laplace_fn(const RadonMeasure& mu, const QuadratureConfig& cfg = {});

// Exact for atoms and exp-poly pieces; numeric parts are convolved on a
// uniform 4096-point grid with the trapezoid rule.
RadonMeasure convolve(const RadonMeasure& mu, const RadonMeasure& nu, const QuadratureConfig& cfg);

struct RajchmanReport {
  std::vector<double> frequencies;
  std::vector<double> moduli;  // |int exp(-i s t) dmu(t)|
  double overall_sup = 0.0;
  double last_decade_sup = 0.0;
  double decay_exponent = 0.0;  // fitted over the last decade, |F(s)| ~ s^-p
  bool rajchman = true;
};

// Log-spaced frequencies on [1e-1, 1e4].
std::vector<double> default_rajchman_grid();
RajchmanReport rajchman_diagnostic(const RadonMeasure& mu, const std::vector<double>& frequencies,
                                   const QuadratureConfig& cfg);

}  // namespace besov
