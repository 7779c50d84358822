#pragma once

#include <string>
#include <utility>
#include <vector>

#include "besov/config.hpp"
#include "besov/function.hpp"

namespace besov {

enum class FamilyKind {
  Cayley,           // f_n(z) = ((z - 1) / (z + 1))^n
  ExpReciprocal,    // g_t(z) = exp(-t / (z + 1))
  RegularizedExp,   // phi_t(z) = z / (z + 1) exp(-t / z)
  Exponential,      // e_a(z) = exp(-a z)
  Resolvent,        // r_a(z) = 1 / (z + a)
  ResolventSquare,  // r_a(z)^2
  Constant,
};

const char* to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string& name);

struct NamedFamily {
  FamilyKind kind = FamilyKind::Constant;
  cplx parameter{0.0, 0.0};

  HalfPlaneFunction function() const;
  std::string label() const;
};

HalfPlaneFunction cayley(int n);
HalfPlaneFunction exp_reciprocal(double t);
HalfPlaneFunction regularized_exp(double t);
HalfPlaneFunction exponential(double a);
HalfPlaneFunction resolvent_function(cplx a);
HalfPlaneFunction resolvent_square(cplx a);

double cayley_besov_exact(int n);
std::pair<double, double> cayley_besov_bounds(int n);
NormReport cayley_hp(int n, const QuadratureConfig& cfg);

double exprecip_besov_exact(double t);
NormReport exprecip_hp(double t, const QuadratureConfig& cfg);

std::pair<double, double> regexp_besov_bounds(double t);
NormReport regexp_besov_numeric(double t, const QuadratureConfig& cfg);
NormReport regexp_hp(double t, const QuadratureConfig& cfg);

// Integral of |G'| over (0, inf) for G(s) = J_1(2 sqrt s) / sqrt s.
NormReport bessel_g_prime_l1(const QuadratureConfig& cfg);

struct GapRow {
  double parameter = 0.0;
  double besov_exact = 0.0;  // NaN where no closed form exists
  double besov_lower = 0.0;
  double besov_upper = 0.0;
  double besov_numeric = 0.0;
  double hp = 0.0;
  double ratio = 0.0;  // hp / besov_numeric
  bool converged = true;
};

// One row per parameter; kind must be Cayley, ExpReciprocal or RegularizedExp.
std::vector<GapRow> gap_table(FamilyKind kind, const std::vector<double>& parameters,
                              const QuadratureConfig& cfg);

}  // namespace besov
