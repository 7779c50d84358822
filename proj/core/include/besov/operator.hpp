#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "besov/config.hpp"
#include "besov/function.hpp"
#include "besov/measures.hpp"

namespace besov {

struct OperatorConstants {
  double gamma_lower = 0.0;   // sampled pairs (x, x*), a lower bound for gamma_A
  double gamma_upper = 0.0;   // operator-norm version of the same functional
  double gamma_limit = 2.0;   // value of the functional as alpha -> inf
  double gamma_at_min_alpha = 0.0;  // upper functional at the smallest grid alpha
  bool gamma_bounded = true;  // false when the functional grows towards alpha -> 0
  double K = 1.0;             // sup_t ||exp(-tA)||
  double M = 1.0;             // sup_{Re z > 0} ||z (z + A)^{-1}||, sampled
  std::vector<double> alpha_grid;
  std::vector<double> gamma_profile;  // upper functional on alpha_grid
};

// A square complex matrix with spectrum in the closed right half-plane.
// Eigenvalues with real part in [-1e-10, 0] are treated as boundary points.
class MatrixOperator {
 public:
  explicit MatrixOperator(Matrix a);

  const Matrix& matrix() const { return a_; }
  Eigen::Index dim() const { return a_.rows(); }
  const Vector& spectrum() const { return eigenvalues_; }
  double min_real_part() const { return min_real_; }
  bool has_boundary_spectrum() const { return boundary_; }
  bool diagonalizable() const { return diagonalizable_; }
  double eigenvector_condition() const { return condition_; }
  bool is_normal() const { return normal_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }
  const Matrix& schur_unitary() const { return schur_u_; }
  const Matrix& schur_triangular() const { return schur_t_; }

  // Hint lists for quadrature layouts: Im and Re of the spectrum.
  std::vector<double> spectral_centers() const;
  std::vector<double> spectral_scales() const;

  // K_A and M_A are computed at construction; gamma estimates on first use.
  double K() const { return constants_.K; }
  double M() const { return constants_.M; }
  const OperatorConstants& constants(const QuadratureConfig& cfg = {}) const;

  static constexpr double condition_limit = 1e8;

 private:
  Matrix a_;
  Vector eigenvalues_;
  Matrix eigenvectors_;
  Matrix schur_u_;
  Matrix schur_t_;
  double min_real_ = 0.0;
  double condition_ = 1.0;
  bool boundary_ = false;
  bool diagonalizable_ = true;
  bool normal_ = false;
  OperatorConstants constants_;
  mutable std::shared_ptr<std::once_flag> gamma_once_ = std::make_shared<std::once_flag>();
  mutable std::shared_ptr<OperatorConstants> gamma_cache_;
};

// Named matrices.
Matrix jordan_matrix(int n, cplx lambda);
Matrix diagonal_matrix(const std::vector<cplx>& entries);
// Diagonalizable matrix V D V^{-1} with eigenvalues of real part in
// [re_min, re_max], |Im| <= im_max and a well-conditioned V; fixed by seed.
Matrix random_stable_matrix(std::uint64_t seed, int dim, double re_min = 0.1, double re_max = 10.0,
                            double im_max = 3.0);

Matrix resolvent(const MatrixOperator& a, cplx z);
Matrix matrix_exponential(const Matrix& a);  // exp(a), scaling and squaring
double operator_norm(const Matrix& m);      // spectral norm

struct GammaPolicy {
  std::vector<double> alpha_grid;  // empty: 10^(k/4) times the spectral scale, k = -16..16
  int random_pairs = 64;
  std::uint64_t seed = 20240607;
};

OperatorConstants gamma_estimate(const MatrixOperator& a, const GammaPolicy& policy,
                                 const QuadratureConfig& cfg);

struct CalcReport {
  Matrix value;
  Matrix schur_value;  // U^* f(A) U, upper triangular
  double error = 0.0;
  bool converged = true;
  std::size_t evaluations = 0;
};

// f(inf) I - (2/pi) int_0^inf alpha int_R (alpha - i beta + A)^{-2} f'(alpha + i beta),
// evaluated in the Schur basis of A.
CalcReport apply_calculus(const HalfPlaneFunction& f, const MatrixOperator& a, const QuadratureConfig& cfg);

// sum_k w_k exp(-t_k A) + int g(t) exp(-t A) dt.
Matrix apply_hp(const RadonMeasure& mu, const MatrixOperator& a, const QuadratureConfig& cfg);

// V diag(f(lambda)) V^{-1}; a single Jordan-type eigenvalue of a matrix of
// size <= 3 is handled by the Taylor polynomial instead.
Matrix oracle_apply(const HalfPlaneFunction& f, const MatrixOperator& a);

double homomorphism_check(const HalfPlaneFunction& f, const HalfPlaneFunction& g, const MatrixOperator& a,
                          const QuadratureConfig& cfg);

struct BoundCheck {
  double lhs = 0.0;  // ||f(A)||
  double rhs = 0.0;  // gamma_upper * ||f||_B
  bool holds = true;
};
BoundCheck bound_check(const HalfPlaneFunction& f, const MatrixOperator& a, const QuadratureConfig& cfg);

struct SpectralReport {
  Vector computed;  // eigenvalues of f(A)
  Vector mapped;    // f(sigma(A)), matched to `computed`
  double max_mismatch = 0.0;
  bool multiset_equal = true;
  bool vanishes_at_infinity = false;  // numeric C_0 flag for f
};
SpectralReport spectral_check(const HalfPlaneFunction& f, const MatrixOperator& a, const QuadratureConfig& cfg,
                              double eigen_tol = 1e-8);

struct ResolventConditionReport {
  bool finite = true;          // every grid alpha gave a finite integral
  bool uniformly_bounded = true;
  double sup = 0.0;            // sup over the grid of (2/pi) alpha int |<R^2 x, x*>|
  double margin = 0.0;         // same, from the operator-norm functional
};
ResolventConditionReport resolvent_condition_check(const MatrixOperator& a, const QuadratureConfig& cfg);

}  // namespace besov
