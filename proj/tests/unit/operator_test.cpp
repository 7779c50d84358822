#include <gtest/gtest.h>

#include <cmath>

#include "besov/error.hpp"
#include "besov/families.hpp"
#include "besov/operator.hpp"
#include "oracles.hpp"

namespace {

using besov::cplx;
using besov::Matrix;
using besov::MatrixOperator;

const besov::QuadratureConfig cfg;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(MatrixOperator, RejectsBadInput) {
  EXPECT_THROW(MatrixOperator(Matrix(2, 3)), besov::Error);
  EXPECT_THROW(MatrixOperator(besov::diagonal_matrix({1.0, -0.5})), besov::Error);
  Matrix nan = Matrix::Identity(2, 2);
  nan(0, 1) = std::nan("");
  EXPECT_THROW(MatrixOperator{nan}, besov::Error);
}

TEST(MatrixOperator, StructureFlags) {
  const MatrixOperator d(besov::diagonal_matrix({1.0, cplx(2.0, 1.0)}));
  EXPECT_TRUE(d.diagonalizable());
  EXPECT_TRUE(d.is_normal());
  EXPECT_FALSE(d.has_boundary_spectrum());
  EXPECT_NEAR(d.min_real_part(), 1.0, 1e-14);
  const MatrixOperator j(besov::jordan_matrix(2, 1.0));
  EXPECT_FALSE(j.diagonalizable());
  EXPECT_FALSE(j.is_normal());
  const MatrixOperator b(besov::diagonal_matrix({0.0, cplx(0.0, 2.0), 1.0}));
  EXPECT_TRUE(b.has_boundary_spectrum());
}

TEST(MatrixOperator, NormalConstants) {
  const MatrixOperator d(besov::diagonal_matrix({0.5, 3.0}));
  EXPECT_NEAR(d.K(), 1.0, 1e-12);
  EXPECT_NEAR(d.M(), 1.0, 1e-6);
}

TEST(MatrixOperator, RandomStableSpectrum) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const MatrixOperator a(besov::random_stable_matrix(seed, 4));
    for (Eigen::Index i = 0; i < 4; ++i) {
      EXPECT_GE(a.spectrum()(i).real(), 0.1 - 1e-9);
      EXPECT_LE(a.spectrum()(i).real(), 10.0 + 1e-9);
      EXPECT_LE(std::abs(a.spectrum()(i).imag()), 3.0 + 1e-9);
    }
  }
  EXPECT_EQ(max_abs(besov::random_stable_matrix(7, 3) - besov::random_stable_matrix(7, 3)), 0.0);
}

TEST(Matrix, ExponentialAndResolvent) {
  const Matrix a = besov::random_stable_matrix(3, 4);
  const Matrix ref = oracle::diagonal_apply([](cplx l) { return std::exp(-l); }, -a);
  EXPECT_LT(max_abs(besov::matrix_exponential(a) - ref), 1e-9 * max_abs(ref));
  const MatrixOperator op(a);
  const cplx z(0.5, 1.0);
  const Matrix r = besov::resolvent(op, z);
  EXPECT_LT(max_abs(r * (a + z * Matrix::Identity(4, 4)) - Matrix::Identity(4, 4)), 1e-12);
  EXPECT_THROW(besov::resolvent(MatrixOperator(besov::diagonal_matrix({1.0})), -1.0), besov::Error);
  EXPECT_NEAR(besov::operator_norm(besov::diagonal_matrix({cplx(0, 3), 2.0})), 3.0, 1e-14);
}

TEST(Calculus, DiagonalMatchesEigenOracle) {
  const MatrixOperator a(besov::diagonal_matrix({0.5, cplx(2.0, 1.5), 6.0}));
  for (const auto& f : {besov::resolvent_function(1.0), besov::exponential(1.0), besov::exp_reciprocal(2.0)}) {
    const Matrix ref = oracle::diagonal_apply([&](cplx l) { return f(l); }, a.matrix());
    const besov::CalcReport rep = besov::apply_calculus(f, a, cfg);
    EXPECT_TRUE(rep.converged) << f.name();
    EXPECT_LT(max_abs(rep.value - ref), 1e-6) << f.name();
  }
}

TEST(Calculus, JordanBlockUsesDerivative) {
  const MatrixOperator j(besov::jordan_matrix(2, 1.0));
  const auto f = besov::exponential(2.0);
  const Matrix ref = oracle::jordan2_apply(std::exp(-2.0), -2.0 * std::exp(-2.0));
  EXPECT_LT(max_abs(besov::apply_calculus(f, j, cfg).value - ref), 1e-6);
  EXPECT_LT(max_abs(besov::oracle_apply(f, j) - ref), 1e-12);
}

TEST(Calculus, HpMeasureAgreesWithCalculus) {
  const MatrixOperator a(besov::random_stable_matrix(2, 3));
  const auto mu = besov::RadonMeasure::dirac(0.0) + besov::RadonMeasure::exp_poly(-2.0, 0, 1.0);
  const Matrix via_hp = besov::apply_hp(mu, a, cfg);
  const Matrix via_calc = besov::apply_calculus(besov::cayley(1), a, cfg).value;
  const Matrix ref = oracle::diagonal_apply([](cplx l) { return (l - 1.0) / (l + 1.0); }, a.matrix());
  EXPECT_LT(max_abs(via_hp - ref), 1e-9);
  EXPECT_LT(max_abs(via_calc - ref), 1e-6);
}

TEST(Calculus, HomomorphismAndBound) {
  const MatrixOperator a(besov::random_stable_matrix(4, 3));
  EXPECT_LT(besov::homomorphism_check(besov::resolvent_function(1.0), besov::exponential(0.5), a, cfg), 1e-6);
  const auto b = besov::bound_check(besov::cayley(3), a, cfg);
  EXPECT_TRUE(b.holds);
  EXPECT_LE(b.lhs, b.rhs);
}

TEST(Calculus, SpectralMapping) {
  const MatrixOperator a(besov::diagonal_matrix({1.0, cplx(2.0, -1.0), 4.0}));
  const auto rep = besov::spectral_check(besov::resolvent_function(1.0), a, cfg);
  EXPECT_TRUE(rep.multiset_equal);
  EXPECT_LT(rep.max_mismatch, 1e-6);
  EXPECT_TRUE(rep.vanishes_at_infinity);
  EXPECT_FALSE(besov::spectral_check(besov::cayley(2), a, cfg).vanishes_at_infinity);
}

TEST(Calculus, GammaEstimateOrdering) {
  const MatrixOperator a(besov::random_stable_matrix(5, 3));
  const auto& c = a.constants(cfg);
  EXPECT_LE(c.gamma_lower, c.gamma_upper + 1e-9);
  EXPECT_TRUE(c.gamma_bounded);
  EXPECT_EQ(c.alpha_grid.size(), c.gamma_profile.size());
  const auto rc = besov::resolvent_condition_check(a, cfg);
  EXPECT_TRUE(rc.finite);
  EXPECT_TRUE(rc.uniformly_bounded);
}

}  // namespace
