#pragma once

#include <functional>
#include <vector>

#include "besov/config.hpp"
#include "besov/function.hpp"

namespace besov {

// A measurable function on the half-plane, g(alpha + i beta). Functions with
// jumps in beta must supply sup_profile (alpha -> sup_beta |g|); jumps in
// alpha are announced through alpha_breaks.
struct PlaneFunction {
  std::function<cplx(double alpha, double beta)> value;
  std::function<double(double alpha)> sup_profile;
  std::vector<double> alpha_breaks;
  std::vector<double> centers{0.0};
  std::vector<double> scales{1.0};
  double frequency = 0.0;
};

PlaneFunction derivative_field(const HalfPlaneFunction& f);
PlaneFunction conj_derivative_field(const HalfPlaneFunction& f);

NormReport sup_norm(const HalfPlaneFunction& f, const QuadratureConfig& cfg);
NormReport besov_seminorm(const HalfPlaneFunction& f, const QuadratureConfig& cfg);
NormReport besov_norm(const HalfPlaneFunction& f, const QuadratureConfig& cfg);
NormReport e_seminorm(const HalfPlaneFunction& g, const QuadratureConfig& cfg);
NormReport w_norm(const PlaneFunction& g, const QuadratureConfig& cfg);
NormReport h1_norm(const HalfPlaneFunction& g, const QuadratureConfig& cfg);

// Integral of sup_beta |f'(alpha + i beta)| over alpha in [a, b] (b may be inf).
NormReport besov_partial(const HalfPlaneFunction& f, double a, double b,
                         const QuadratureConfig& cfg);
// sup_beta |f'(alpha + i beta)| on one vertical line.
double derivative_sup(const HalfPlaneFunction& f, double alpha, const QuadratureConfig& cfg);

ComplexEstimate green_pairing(const HalfPlaneFunction& g, const HalfPlaneFunction& f,
                              const QuadratureConfig& cfg);
ComplexEstimate boundary_pairing(const HalfPlaneFunction& g, const HalfPlaneFunction& f,
                                 const QuadratureConfig& cfg);

enum class ReproduceVariant { First, Re, Im, Second };
const char* to_string(ReproduceVariant v);

ComplexEstimate reproduce(const HalfPlaneFunction& f, cplx z, ReproduceVariant variant,
                          const QuadratureConfig& cfg);
ComplexEstimate poisson_reconstruct(const HalfPlaneFunction& f, cplx z,
                                    const QuadratureConfig& cfg);

}  // namespace besov
