#include <gtest/gtest.h>

#include <cmath>

#include "besov/approx.hpp"
#include "besov/error.hpp"
#include "besov/families.hpp"
#include "oracles.hpp"

namespace {

using besov::cplx;
using besov::pi;

const besov::QuadratureConfig cfg;

// Antiderivative of 2t / (t + c)^3.
cplx k_antiderivative(double t, cplx c) { return -2.0 / (t + c) + c / ((t + c) * (t + c)); }

TEST(KTriangle, ResolventClosedForm) {
  const auto r = besov::resolvent_function(1.0);
  for (double m : {2.0, 5.5, 40.0}) {
    const auto k = besov::k_triangle(r, m);
    for (cplx z : {cplx(0.0, 0.0), cplx(0.3, 2.0), cplx(4.0, -1.0)}) {
      const cplx c = z + 1.0;
      const cplx expected = k_antiderivative(2.0 * m, c) - k_antiderivative(2.0 / m, c);
      EXPECT_LT(std::abs(k(z) - expected), 1e-13) << m;
      const cplx simpson = oracle::simpson<cplx>(
          [&](double t) { return t * 2.0 / std::pow(t + c, 3); }, 2.0 / m, 2.0 * m, 200000);
      EXPECT_LT(std::abs(k(z) - simpson), 1e-9);
    }
  }
  EXPECT_THROW(besov::k_triangle(r, 1.5), besov::Error);
}

TEST(KTriangle, ExponentialMatchesSimpson) {
  const auto e = besov::exponential(1.0);
  const cplx z(0.5, 1.0);
  const cplx expected = oracle::simpson<cplx>([&](double t) { return t * std::exp(-(t + z)); }, 2.0 / 500.0, 1000.0,
                                              400000);
  EXPECT_LT(std::abs(besov::k_triangle(e, 500.0)(z) - expected), 1e-9);
}

TEST(KTriangle, TailOfResolvent) {
  for (double m : {2.0, 10.0, 100.0}) {
    EXPECT_NEAR(besov::r_tail(besov::resolvent_function(1.0), m, cfg), 2.0 / (m + 1.0), 1e-6);
  }
}

TEST(KTriangle, Inequalities) {
  for (const auto& f : {besov::cayley(2), besov::exp_reciprocal(3.0)}) {
    for (double m : {4.0, 32.0}) {
      const auto e = besov::k_error_check(f, m, cfg);
      EXPECT_TRUE(e.holds) << f.name() << " " << e.lhs << " " << e.rhs;
      const auto s = besov::k_seminorm_check(f, m, cfg);
      EXPECT_TRUE(s.holds) << f.name() << " " << s.lhs << " " << s.rhs;
    }
  }
}

TEST(QTransform, RecoversFunctionFromDerivative) {
  const auto f = besov::resolvent_function(cplx(1.0, 0.5));
  const auto g = besov::derivative_field(f);
  for (cplx z : {cplx(0.5, 0.0), cplx(2.0, -3.0)}) {
    EXPECT_LT(std::abs(besov::q_transform(g, z, cfg).value - f(z)), 1e-6);
  }
}

TEST(QTransform, ConjugateDerivativeIsAnnihilated) {
  const auto g = besov::conj_derivative_field(besov::exponential(1.0));
  EXPECT_LT(std::abs(besov::q_transform(g, cplx(1.0, 0.5), cfg).value), 1e-6);
}

TEST(QTransform, StripErrorBound) {
  const auto g = besov::derivative_field(besov::exp_reciprocal(1.0));
  const cplx z(0.5, 1.0);
  const auto rep = besov::v_strip_error(g, z, 16.0, cfg);
  EXPECT_TRUE(rep.holds);
  EXPECT_LE(rep.observed, rep.bound);
  EXPECT_THROW(besov::v_strip_error(g, z, 1.5, cfg), besov::Error);
}

TEST(QTriangle, MeasureMatchesDirectValue) {
  const auto f = besov::resolvent_function(1.0);
  const double n = 8.0;
  const auto mu = besov::q_triangle_measure(f, n, cfg);
  for (cplx z : {cplx(0.5, 0.0), cplx(1.0, 2.0)}) {
    const cplx direct = besov::q_triangle_value(f, n, z, cfg).value;
    EXPECT_LT(std::abs(besov::laplace(mu, z, cfg).value - direct), 1e-4);
  }
  EXPECT_LE(besov::hp_norm(mu, cfg).value, besov::q_triangle_hp_bound(f, n, cfg));
}

TEST(QTriangle, ConvergesOnCompactStrip) {
  const auto f = besov::exp_reciprocal(1.0);
  const double e8 = besov::strip_error(besov::q_triangle_measure(f, 8.0, cfg), f, 1.0, 2.0, cfg);
  const double e32 = besov::strip_error(besov::q_triangle_measure(f, 32.0, cfg), f, 1.0, 2.0, cfg);
  EXPECT_LT(e32, e8);
  EXPECT_THROW(besov::q_triangle_measure(f, 1.0, cfg), besov::Error);
}

TEST(GKernel, GaussianMatchesSimpson) {
  auto phi = [](double b) { return cplx(std::exp(-b * b)); };
  const double alpha = 0.7;
  const cplx z(0.4, 0.3);
  const cplx ref = oracle::simpson<cplx>(
      [&](double b) { return phi(b) / std::pow(z + alpha - cplx(0.0, b), 2); }, -12.0, 12.0, 200000);
  const auto k = besov::g_kernel(alpha, phi, 1.0, z, cfg);
  EXPECT_LT(std::abs(k.value - ref), 1e-9);
  EXPECT_TRUE(k.within);
  EXPECT_NEAR(k.sup_bound, pi / alpha, 1e-15);
}

TEST(GKernel, ConstantSymbolGivesZero) {
  const auto k = besov::g_kernel(1.0, [](double) { return cplx(1.0); }, 1.0, cplx(0.5, 0.0), cfg);
  EXPECT_LT(std::abs(k.value), 1e-6);
}

TEST(GKernel, SeminormBound) {
  auto phi = [](double b) { return cplx(std::tanh(b)); };
  const auto rep = besov::g_kernel_check(2.0, phi, 1.0, cfg);
  EXPECT_TRUE(rep.holds);
  EXPECT_NEAR(rep.rhs, 2.0, 1e-15);
}

}  // namespace
