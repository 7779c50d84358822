#pragma once

#include <vector>

#include "besov/config.hpp"
#include "besov/function.hpp"
#include "besov/operator.hpp"

namespace besov {

// f(zA). Real z > 0 goes through apply_calculus(rescale(f, z), A); complex z
// applies f to the operator zA, whose spectrum must stay in the closed right
// half-plane. z = 0 gives f(0) I.
Matrix evolve(const HalfPlaneFunction& f, const MatrixOperator& a, cplx z, const QuadratureConfig& cfg);

struct ContinuityReport {
  std::vector<double> t;
  std::vector<double> jumps;  // ||f(t_{k+1} A) - f(t_k A)||
  double max_jump = 0.0;
};
ContinuityReport continuity_scan(const HalfPlaneFunction& f, const MatrixOperator& a,
                                 const std::vector<double>& t, const QuadratureConfig& cfg);

struct DerivativeReport {
  std::vector<double> t;          // 2^-k, k = 3..12
  std::vector<Vector> quotients;  // (f(tA) x - f(0) x) / t
  Vector limit;                   // Richardson-extrapolated
  Vector target;                  // f'(0) A x
  double rel_error = 0.0;
};
// Throws NotInBesov when f' is not in B.
DerivativeReport short_time_derivative(const HalfPlaneFunction& f, const MatrixOperator& a, const Vector& x,
                                       const QuadratureConfig& cfg);

struct DecayReport {
  std::vector<double> t;
  std::vector<double> norms;  // ||f(tA)||
  bool zero_in_spectrum = false;
  bool decays = false;        // suffix maxima decrease and the last value is below tol
  bool plateau = false;       // every norm >= |f(0)| - tol
  double f0 = 0.0;            // |f(0)|
  double omega = 0.0;         // min Re sigma(A) - 1e-6
  bool holds = false;         // the branch that applies is satisfied
};
std::vector<double> default_decay_grid();
DecayReport long_time_decay(const HalfPlaneFunction& f, const MatrixOperator& a, const std::vector<double>& t,
                            const QuadratureConfig& cfg, double tol = 1e-6);

struct TruncationReport {
  std::vector<double> n;
  std::vector<Matrix> raw;     // symmetric truncations at N
  std::vector<Matrix> cesaro;  // Fejer-weighted truncations at N
  std::vector<double> raw_error;
  std::vector<double> cesaro_error;
  Matrix limit;                // singular part summed in closed form
  double limit_error = 0.0;
  double slope = 0.0;          // log-log slope of raw_error against N
};

struct InversionReport {
  Matrix reference;            // f'(A + sigma) from the eigen-decomposition or the calculus
  Matrix squared;              // formula with the squared resolvent, absolutely convergent
  double squared_error = 0.0;
  TruncationReport first;      // formula with the first power of the resolvent
};

// f'(A + sigma) from boundary values of f (squared resolvent) and of f'
// (first power, principal value).
InversionReport complex_inversion(const HalfPlaneFunction& f, const MatrixOperator& a, double sigma,
                                  const std::vector<double>& n_grid, const QuadratureConfig& cfg);

// exp(-tA) from the squared-resolvent formula and from the classical
// truncated Bromwich integral.
InversionReport semigroup_inversion(const MatrixOperator& a, double t, double sigma,
                                    const std::vector<double>& n_grid, const QuadratureConfig& cfg);

// ||f(alpha + i beta) (alpha - i beta + A)^{-1}|| over the beta grid.
std::vector<double> norm_continuity_diagnostic(const HalfPlaneFunction& f, const MatrixOperator& a, double alpha,
                                               const std::vector<double>& beta);

// Largest relative Cauchy-Riemann residual ||dF/dx + i dF/dy|| / ||dF/dx||
// of F(z) = f(zA) by central differences of step h at the given points.
double holomorphy_residual(const HalfPlaneFunction& f, const MatrixOperator& a, const std::vector<cplx>& points,
                           double h, const QuadratureConfig& cfg);

}  // namespace besov
