#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "besov/error.hpp"
#include "besov/families.hpp"
#include "besov/function.hpp"

namespace {

using besov::cplx;

TEST(HalfPlaneFunction, ArithmeticMatchesPointwise) {
  const auto f = besov::resolvent_function(1.0);
  const auto g = besov::exponential(2.0);
  const cplx z(0.7, -1.3);
  EXPECT_LT(std::abs((f + g)(z) - (1.0 / (z + 1.0) + std::exp(-2.0 * z))), 1e-15);
  EXPECT_LT(std::abs((f * g)(z) - std::exp(-2.0 * z) / (z + 1.0)), 1e-15);
  EXPECT_LT(std::abs((f - g)(z) - (1.0 / (z + 1.0) - std::exp(-2.0 * z))), 1e-15);
  const cplx dfg = -std::exp(-2.0 * z) / ((z + 1.0) * (z + 1.0)) - 2.0 * std::exp(-2.0 * z) / (z + 1.0);
  EXPECT_LT(std::abs((f * g).derivative(z) - dfg), 1e-14);
  EXPECT_LT(std::abs((cplx(0, 3) * f)(z) - cplx(0, 3) / (z + 1.0)), 1e-15);
}

TEST(HalfPlaneFunction, ConstantKeepsPartnerHints) {
  const auto f = besov::exponential(1.0) + besov::constant_function(2.0);
  EXPECT_EQ(f.frequency(), besov::exponential(1.0).frequency());
  EXPECT_TRUE(besov::constant_function(1.0).is_constant());
  EXPECT_FALSE(f.is_constant());
}

TEST(HalfPlaneFunction, ShiftOfExponentialIsScaledExponential) {
  const auto e1 = besov::exponential(1.0);
  const auto s = besov::shift(e1, 1.0);
  for (cplx z : {cplx(0.1, 0.0), cplx(2.0, 5.0), cplx(0.5, -3.0)}) {
    EXPECT_LT(std::abs(s(z) - std::exp(-1.0) * e1(z)), 1e-15);
    EXPECT_LT(std::abs(s.derivative(z) + std::exp(-1.0 - z)), 1e-15);
  }
}

TEST(HalfPlaneFunction, RescaleTransformsDerivatives) {
  const auto g = besov::exp_reciprocal(1.0);
  const auto s = besov::rescale(g, 7.0);
  const cplx z(0.3, 0.4);
  EXPECT_LT(std::abs(s(z) - g(7.0 * z)), 1e-15);
  EXPECT_LT(std::abs(s.derivative(z) - 7.0 * g.derivative(7.0 * z)), 1e-14);
  EXPECT_LT(std::abs(s.second_derivative(z) - 49.0 * g.second_derivative(7.0 * z)), 1e-12);
}

TEST(HalfPlaneFunction, BoundaryValuesAgreeWithInteriorLimit) {
  for (const auto& f : {besov::resolvent_function(1.0), besov::cayley(3), besov::exp_reciprocal(2.0)}) {
    ASSERT_TRUE(f.has_boundary());
    for (double s : {-4.0, -0.5, 0.0, 1.0, 10.0}) {
      EXPECT_LT(std::abs(f.boundary_value(s) - f(cplx(1e-9, s))), 1e-7) << f.name() << " s=" << s;
    }
  }
}

TEST(CauchyDerivative, SpecExamples) {
  EXPECT_NEAR(std::abs(besov::cauchy_derivative(besov::resolvent_function(1.0), 1.0, 1) + 0.25), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(besov::cauchy_derivative(besov::exponential(1.0), 2.0, 2) - std::exp(-2.0)), 0.0, 1e-10);
  // d/dz exp(-1/(z+1)) = exp(-1/(z+1)) / (z+1)^2, at z = 1.
  const cplx expected = std::exp(-0.5) * 0.25;
  EXPECT_LT(std::abs(besov::cauchy_derivative(besov::exp_reciprocal(1.0), 1.0, 1) - expected), 1e-10);
}

TEST(CauchyDerivative, RejectsBoundaryPoints) {
  EXPECT_THROW(besov::cauchy_derivative(besov::exponential(1.0), cplx(0.0, 1.0), 1), besov::Error);
}

TEST(HalfPlaneFunction, ExactDerivativesMatchCauchyAtRandomPoints) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(0.05, 4.0), im(-5.0, 5.0);
  const std::vector<besov::NamedFamily> fams{{besov::FamilyKind::Cayley, 5.0},
                                             {besov::FamilyKind::ExpReciprocal, 3.0},
                                             {besov::FamilyKind::RegularizedExp, 2.0},
                                             {besov::FamilyKind::Exponential, 1.5},
                                             {besov::FamilyKind::Resolvent, cplx(0.5, 2.0)},
                                             {besov::FamilyKind::ResolventSquare, 1.0}};
  for (const auto& fam : fams) {
    const auto f = fam.function();
    for (int k = 0; k < 10; ++k) {
      const cplx z(re(rng), im(rng));
      const cplx d1 = besov::cauchy_derivative(f.parts().value, z, 1);
      const cplx d2 = besov::cauchy_derivative(f.parts().value, z, 2);
      EXPECT_LE(std::abs(d1 - f.derivative(z)), 1e-6 * std::abs(f.derivative(z)) + 1e-12) << fam.label();
      EXPECT_LE(std::abs(d2 - f.second_derivative(z)), 1e-6 * std::abs(f.second_derivative(z)) + 1e-12)
          << fam.label();
    }
  }
}

TEST(HalfPlaneFunction, DerivativeFunction) {
  const auto d = besov::derivative_function(besov::resolvent_function(1.0));
  const cplx z(1.0, 1.0);
  EXPECT_LT(std::abs(d(z) + 1.0 / ((z + 1.0) * (z + 1.0))), 1e-15);
  EXPECT_LT(std::abs(d.derivative(z) - 2.0 / std::pow(z + 1.0, 3)), 1e-15);
  EXPECT_EQ(d.at_infinity(), cplx(0.0));
}

}  // namespace
