#include <gtest/gtest.h>

#include <cmath>

#include "besov/dynamics.hpp"
#include "besov/error.hpp"
#include "besov/families.hpp"
#include "oracles.hpp"

namespace {

using besov::cplx;
using besov::Matrix;
using besov::MatrixOperator;

const besov::QuadratureConfig cfg;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(Evolve, ExponentialIsSemigroup) {
  const MatrixOperator a(besov::random_stable_matrix(6, 3));
  for (double t : {0.25, 1.0, 3.0}) {
    const Matrix ref = besov::matrix_exponential(-t * a.matrix());
    EXPECT_LT(max_abs(besov::evolve(besov::exponential(1.0), a, t, cfg) - ref), 1e-6) << t;
  }
}

TEST(Evolve, ZeroAndComplexTimes) {
  const MatrixOperator a(besov::diagonal_matrix({1.0, 2.0}));
  const auto f = besov::resolvent_function(1.0);
  EXPECT_LT(max_abs(besov::evolve(f, a, 0.0, cfg) - Matrix::Identity(2, 2)), 1e-12);
  const cplx z(1.0, 1.0);
  const Matrix ref = besov::diagonal_matrix({1.0 / (z + 1.0), 1.0 / (2.0 * z + 1.0)});
  EXPECT_LT(max_abs(besov::evolve(f, a, z, cfg) - ref), 1e-6);
  EXPECT_THROW(besov::evolve(f, a, -1.0, cfg), besov::Error);
  const MatrixOperator rot(besov::diagonal_matrix({cplx(1.0, 3.0)}));
  EXPECT_THROW(besov::evolve(f, rot, cplx(1.0, 1.0), cfg), besov::Error);
}

TEST(Evolve, ContinuityScan) {
  const MatrixOperator a(besov::diagonal_matrix({1.0, 5.0}));
  std::vector<double> t;
  for (int k = 0; k <= 20; ++k) t.push_back(0.05 * k);
  const auto rep = besov::continuity_scan(besov::exponential(1.0), a, t, cfg);
  ASSERT_EQ(rep.jumps.size(), t.size() - 1);
  // ||exp(-t A) - exp(-s A)|| <= 5 |t - s| for this A.
  EXPECT_LE(rep.max_jump, 5.0 * 0.05 + 1e-6);
}

TEST(Evolve, ShortTimeDerivative) {
  const MatrixOperator a(besov::random_stable_matrix(8, 3));
  besov::Vector x = besov::Vector::Ones(3);
  const auto rep = besov::short_time_derivative(besov::resolvent_function(1.0), a, x, cfg);
  EXPECT_LT(rep.rel_error, 1e-4);
  EXPECT_LT((rep.target + a.matrix() * x).norm(), 1e-12);
  EXPECT_THROW(besov::short_time_derivative(besov::resolvent_function(1.0), a, besov::Vector::Ones(2), cfg),
               besov::Error);
}

TEST(Evolve, LongTimeDecayBranches) {
  const auto f = besov::resolvent_function(1.0);
  const auto grid = besov::default_decay_grid();
  const auto away = besov::long_time_decay(f, MatrixOperator(besov::diagonal_matrix({1.0, 2.0})), grid, cfg);
  EXPECT_FALSE(away.zero_in_spectrum);
  EXPECT_TRUE(away.decays);
  EXPECT_TRUE(away.holds);
  const auto zero = besov::long_time_decay(f, MatrixOperator(besov::diagonal_matrix({0.0, 2.0})), grid, cfg);
  EXPECT_TRUE(zero.zero_in_spectrum);
  EXPECT_TRUE(zero.plateau);
  EXPECT_NEAR(zero.f0, 1.0, 1e-12);
  EXPECT_THROW(besov::long_time_decay(besov::cayley(1), MatrixOperator(besov::diagonal_matrix({1.0})), grid, cfg),
               besov::Error);
}

TEST(Inversion, ScalarExamples) {
  const std::vector<double> n_grid{100.0, 400.0};
  const auto r = besov::complex_inversion(besov::resolvent_function(1.0),
                                          MatrixOperator(besov::diagonal_matrix({1.0})), 1.0, n_grid, cfg);
  EXPECT_NEAR(std::abs(r.reference(0, 0) + 1.0 / 9.0), 0.0, 1e-12);
  EXPECT_LT(r.squared_error, 1e-6);
  const auto e = besov::complex_inversion(besov::exponential(1.0), MatrixOperator(besov::diagonal_matrix({0.5})),
                                          1.0, n_grid, cfg);
  EXPECT_NEAR(std::abs(e.reference(0, 0) + std::exp(-1.5)), 0.0, 1e-12);
  EXPECT_LT(e.squared_error, 1e-6);
}

TEST(Inversion, JordanSemigroup) {
  const MatrixOperator j(besov::jordan_matrix(2, 1.0));
  const auto rep = besov::semigroup_inversion(j, 2.0, 1.0, {100.0, 200.0, 400.0}, cfg);
  const Matrix ref = oracle::jordan2_apply(std::exp(-2.0), -2.0 * std::exp(-2.0));
  EXPECT_LT(max_abs(rep.reference - ref), 1e-10);
  EXPECT_LT(max_abs(rep.squared - ref), 1e-6);
  ASSERT_EQ(rep.first.raw_error.size(), 3u);
  EXPECT_LT(rep.first.raw_error[2], rep.first.raw_error[0]);
  EXPECT_LT(rep.first.limit_error, 1e-6);
  EXPECT_THROW(besov::semigroup_inversion(j, 2.0, 0.0, {100.0}, cfg), besov::Error);
}

TEST(Holomorphy, CauchyRiemannResidual) {
  const MatrixOperator a(besov::diagonal_matrix({1.0, 3.0}));
  const double res = besov::holomorphy_residual(besov::resolvent_function(1.0), a,
                                                {cplx(1.0, 0.0), cplx(0.5, 0.2)}, 1e-3, cfg);
  EXPECT_LT(res, 1e-4);
}

TEST(Holomorphy, NormContinuityDiagnostic) {
  const MatrixOperator a(besov::diagonal_matrix({1.0}));
  const std::vector<double> beta{-10.0, 0.0, 10.0};
  const auto v = besov::norm_continuity_diagnostic(besov::exponential(1.0), a, 1.0, beta);
  ASSERT_EQ(v.size(), 3u);
  // |exp(-(1 + i b))| / |2 - i b|.
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_NEAR(v[k], std::exp(-1.0) / std::abs(cplx(2.0, -beta[k])), 1e-12);
  }
}

}  // namespace
