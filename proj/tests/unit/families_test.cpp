#include <gtest/gtest.h>

#include <cmath>

#include "besov/error.hpp"
#include "besov/families.hpp"
#include "besov/norms.hpp"
#include "besov/special.hpp"
#include "oracles.hpp"

namespace {

using besov::cplx;
using besov::FamilyKind;

const besov::QuadratureConfig cfg;

TEST(Special, BesselMatchesStd) {
  for (int order = 0; order <= 4; ++order) {
    for (double x : {0.0, 0.3, 2.0, 7.5, 11.9, 12.1, 30.0, 250.0}) {
      EXPECT_NEAR(besov::bessel_j(order, x), std::cyl_bessel_j(order, x), 1e-11) << order << " " << x;
    }
  }
}

TEST(Special, BesselZerosAreRoots) {
  const auto zeros = besov::bessel_zeros(1, 50.0);
  ASSERT_EQ(zeros.size(), 15u);
  EXPECT_NEAR(zeros[0], 3.8317059702075123, 1e-10);
  for (double z : zeros) EXPECT_NEAR(std::cyl_bessel_j(1, z), 0.0, 1e-11);
}

TEST(Special, LaguerreMatchesStd) {
  for (int n : {0, 1, 5, 30}) {
    for (double t : {0.0, 0.7, 10.0, 40.0}) {
      const double ref = std::assoc_laguerre(n, 1, t);
      EXPECT_NEAR(besov::laguerre(n, 1.0, t), ref, 1e-10 * std::max(1.0, std::abs(ref)));
      EXPECT_NEAR(besov::laguerre_scaled(n, t), std::exp(-t / 2) * ref,
                  1e-10 * std::max(1.0, std::abs(std::exp(-t / 2) * ref)));
    }
  }
  const auto roots = besov::laguerre_roots(12);
  ASSERT_EQ(roots.size(), 12u);
  for (double r : roots) EXPECT_NEAR(besov::laguerre_scaled(12, r), 0.0, 1e-10);
}

TEST(Special, BesselG) {
  for (double s : {1e-6, 0.5, 4.0, 100.0}) {
    const double x = 2.0 * std::sqrt(s);
    EXPECT_NEAR(besov::bessel_g(s), std::cyl_bessel_j(1, x) / std::sqrt(s), 1e-12);
    EXPECT_NEAR(besov::bessel_g_prime(s), -std::cyl_bessel_j(2, x) / s, 1e-11);
  }
  EXPECT_NEAR(besov::bessel_g(0.0), 1.0, 1e-15);
}

TEST(Families, NamesRoundTrip) {
  for (FamilyKind k : {FamilyKind::Cayley, FamilyKind::ExpReciprocal, FamilyKind::RegularizedExp,
                       FamilyKind::Exponential, FamilyKind::Resolvent, FamilyKind::ResolventSquare,
                       FamilyKind::Constant}) {
    EXPECT_EQ(besov::family_kind_from_string(besov::to_string(k)), k);
  }
  EXPECT_THROW(besov::family_kind_from_string("gauss"), besov::Error);
  EXPECT_EQ((besov::NamedFamily{FamilyKind::Resolvent, cplx(1.0, -0.5)}.label()), "resolvent:1-0.5i");
}

TEST(Families, ClosedFormValues) {
  const cplx z(0.4, 1.7);
  EXPECT_LT(std::abs(besov::cayley(3)(z) - std::pow((z - 1.0) / (z + 1.0), 3)), 1e-15);
  EXPECT_LT(std::abs(besov::exp_reciprocal(2.0)(z) - std::exp(-2.0 / (z + 1.0))), 1e-15);
  EXPECT_LT(std::abs(besov::regularized_exp(2.0)(z) - z / (z + 1.0) * std::exp(-2.0 / z)), 1e-15);
  EXPECT_LT(std::abs(besov::resolvent_square(2.0)(z) - 1.0 / ((z + 2.0) * (z + 2.0))), 1e-15);
  EXPECT_EQ(besov::cayley(4).at_infinity(), cplx(1.0));
  EXPECT_THROW(besov::cayley(0), besov::Error);
}

TEST(Families, CayleyExactAgainstNumericAndBounds) {
  for (int n : {2, 3, 8}) {
    const double exact = besov::cayley_besov_exact(n);
    const auto [lo, hi] = besov::cayley_besov_bounds(n);
    EXPECT_LE(lo, exact);
    EXPECT_LE(exact, hi);
    EXPECT_NEAR(besov::besov_norm(besov::cayley(n), cfg).value, exact, 1e-5 * exact) << n;
  }
}

TEST(Families, ExpReciprocalExactAgainstNumeric) {
  for (double t : {0.5, 2.0, 10.0}) {
    const double exact = besov::exprecip_besov_exact(t);
    EXPECT_NEAR(besov::besov_norm(besov::exp_reciprocal(t), cfg).value, exact, 1e-5 * exact) << t;
  }
}

TEST(Families, CayleyHpMatchesLaguerreOracle) {
  for (int n : {2, 5, 12}) {
    const double ref =
        1.0 + oracle::simpson<double>(
                  [n](double t) { return std::abs(std::assoc_laguerre(n - 1, 1, t)) * std::exp(-t / 2); }, 0.0,
                  200.0, 400000);
    EXPECT_NEAR(besov::cayley_hp(n, cfg).value, ref, 1e-6 * ref) << n;
  }
  EXPECT_NEAR(besov::cayley_hp(1, cfg).value, 3.0, 1e-9);
}

TEST(Families, ExpReciprocalHpMatchesBesselOracle) {
  for (double t : {0.5, 3.0}) {
    const double ref =
        1.0 + oracle::simpson<double>(
                  [t](double s) {
                    return s == 0.0 ? t : std::sqrt(t / s) * std::abs(std::cyl_bessel_j(1, 2.0 * std::sqrt(t * s))) *
                                              std::exp(-s);
                  },
                  0.0, 60.0, 600000);
    EXPECT_NEAR(besov::exprecip_hp(t, cfg).value, ref, 1e-5 * ref) << t;
  }
}

TEST(Families, HpDominatesBesov) {
  for (int n : {2, 16}) {
    EXPECT_GE(besov::cayley_hp(n, cfg).value, besov::cayley_besov_exact(n) - 1e-9);
  }
  for (double t : {1.0, 100.0}) {
    EXPECT_GE(besov::exprecip_hp(t, cfg).value, besov::exprecip_besov_exact(t) - 1e-9);
  }
}

TEST(Families, RegExpNumericWithinBounds) {
  for (double t : {1.0, 20.0}) {
    const auto [lo, hi] = besov::regexp_besov_bounds(t);
    const double v = besov::regexp_besov_numeric(t, cfg).value;
    EXPECT_LE(lo, v);
    EXPECT_LE(v, hi);
    EXPECT_GE(besov::regexp_hp(t, cfg).value, v - 1e-6);
  }
}

TEST(Families, BesselGPrimeL1IsFinite) {
  const double ref =
      oracle::simpson<double>([](double s) { return std::abs(std::cyl_bessel_j(2, 2.0 * std::sqrt(s))) / s; }, 1e-12,
                              1.0, 20000) +
      oracle::simpson<double>(
          [](double u) {
            // s = u^2 on [1, inf) truncated at 1e6 with the tail bounded below.
            return 2.0 * std::abs(std::cyl_bessel_j(2, 2.0 * u)) / u;
          },
          1.0, 1000.0, 2000000);
  const double v = besov::bessel_g_prime_l1(cfg).value;
  // |J_2(2u)| / u ~ u^-3/2 so the omitted tail is below 2 * 2 / sqrt(pi * 1000).
  EXPECT_GE(v, ref - 1e-6);
  EXPECT_LE(v, ref + 0.08);
}

TEST(Families, GapTableRows) {
  const auto rows = besov::gap_table(FamilyKind::Cayley, {1, 2, 4}, cfg);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NEAR(rows[0].besov_exact, 3.0, 1e-12);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.ratio, r.hp / r.besov_numeric, 1e-12);
    EXPECT_GE(r.ratio, 1.0 - 1e-6);
  }
  EXPECT_THROW(besov::gap_table(FamilyKind::Exponential, {1.0}, cfg), besov::Error);
}

}  // namespace
