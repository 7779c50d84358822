#include "besov/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "besov/error.hpp"
#include "besov/half_plane.hpp"
#include "besov/norms.hpp"
#include "besov/quadrature.hpp"

namespace besov {

namespace {

using SmallMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;

constexpr double boundary_tol = 1e-10;

double max_of(const std::vector<double>& v, double fallback) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  return std::isfinite(m) ? m : fallback;
}

quad::LineLayout line_layout(const std::vector<double>& centers, const std::vector<double>& scales,
                             double alpha, const QuadratureConfig& cfg) {
  quad::LineLayout layout;
  layout.centers = centers;
  layout.scale = alpha;
  layout.wide = alpha + max_of(scales, 1.0);
  layout.window = cfg.beta_window_init;
  layout.growth = cfg.beta_window_growth;
  layout.frequency = 0.0;
  return layout;
}

template <class M>
M upper_inverse(const M& t) {
  const Eigen::Index n = t.rows();
  M inv = M::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    inv(j, j) = 1.0 / t(j, j);
    for (Eigen::Index i = j - 1; i >= 0; --i) {
      cplx s = 0.0;
      for (Eigen::Index k = i + 1; k <= j; ++k) s += t(i, k) * inv(k, j);
      inv(i, j) = -s / t(i, i);
    }
  }
  return inv;
}

}  // namespace

Matrix matrix_exponential(const Matrix& a) { return a.exp(); }

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

MatrixOperator::MatrixOperator(Matrix a) : a_(std::move(a)) {
  if (a_.rows() == 0 || a_.rows() != a_.cols()) {
    throw Error(ErrorCode::InvalidArgument, "operator matrix must be square and non-empty");
  }
  if (!a_.allFinite()) throw Error(ErrorCode::InvalidArgument, "operator matrix has non-finite entries");
  Eigen::ComplexEigenSolver<Matrix> eig(a_, true);
  if (eig.info() != Eigen::Success) throw Error(ErrorCode::InvalidArgument, "eigen-decomposition failed");
  eigenvalues_ = eig.eigenvalues();
  eigenvectors_ = eig.eigenvectors();
  min_real_ = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
    cplx& l = eigenvalues_(i);
    if (l.real() < -boundary_tol) {
      throw Error(ErrorCode::InvalidArgument, "spectrum must lie in the closed right half-plane");
    }
    if (l.real() <= boundary_tol) {
      boundary_ = true;
      if (l.real() < 0.0) l = cplx(0.0, l.imag());
    }
    min_real_ = std::min(min_real_, l.real());
  }
  Eigen::JacobiSVD<Matrix> svd(eigenvectors_);
  const auto& s = svd.singularValues();
  condition_ = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
  diagonalizable_ = condition_ < condition_limit;
  const double scale = std::max(1.0, a_.cwiseAbs2().sum());
  normal_ = (a_ * a_.adjoint() - a_.adjoint() * a_).cwiseAbs().maxCoeff() <= 1e-12 * scale;
  Eigen::ComplexSchur<Matrix> schur(a_);
  schur_u_ = schur.matrixU();
  schur_t_ = schur.matrixT();

  if (normal_) {
    constants_.K = 1.0;
  } else {
    double k = 1.0;
    for (int i = 0; i <= 120; ++i) {
      const double t = std::pow(10.0, -3.0 + 6.0 * i / 120.0);
      k = std::max(k, operator_norm(matrix_exponential(-t * a_)));
    }
    constants_.K = k;
  }
  const double spectral = std::max(1.0, eigenvalues_.cwiseAbs().maxCoeff());
  double m = 0.0;
  const Matrix id = Matrix::Identity(dim(), dim());
  for (int i = 0; i <= 48; ++i) {
    const double r = spectral * std::pow(10.0, -3.0 + 6.0 * i / 48.0);
    for (int j = 0; j <= 32; ++j) {
      const double theta = -0.5 * pi + pi * j / 32.0;
      const cplx z = std::polar(r, theta);
      Eigen::PartialPivLU<Matrix> lu(z * id + a_);
      const Matrix x = z * lu.inverse();
      if (!x.allFinite()) continue;
      m = std::max(m, operator_norm(x));
    }
  }
  constants_.M = m;
}

std::vector<double> MatrixOperator::spectral_centers() const {
  std::vector<double> c;
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) c.push_back(eigenvalues_(i).imag());
  return merge_hints({}, c);
}

std::vector<double> MatrixOperator::spectral_scales() const {
  std::vector<double> s;
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
    if (eigenvalues_(i).real() > boundary_tol) s.push_back(eigenvalues_(i).real());
  }
  if (s.empty()) s.push_back(1.0);
  return merge_hints({}, s);
}

const OperatorConstants& MatrixOperator::constants(const QuadratureConfig& cfg) const {
  std::call_once(*gamma_once_, [&] {
    OperatorConstants c = gamma_estimate(*this, GammaPolicy{}, cfg);
    c.K = constants_.K;
    c.M = constants_.M;
    gamma_cache_ = std::make_shared<OperatorConstants>(std::move(c));
  });
  return *gamma_cache_;
}

Matrix jordan_matrix(int n, cplx lambda) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "jordan block needs n >= 1");
  Matrix j = lambda * Matrix::Identity(n, n);
  for (int i = 0; i + 1 < n; ++i) j(i, i + 1) = 1.0;
  return j;
}

Matrix diagonal_matrix(const std::vector<cplx>& entries) {
  if (entries.empty()) throw Error(ErrorCode::InvalidArgument, "diag needs at least one entry");
  Matrix d = Matrix::Zero(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) d(i, i) = entries[i];
  return d;
}

Matrix random_stable_matrix(std::uint64_t seed, int dim, double re_min, double re_max, double im_max) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "random_stable needs dim >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(re_min, re_max);
  std::uniform_real_distribution<double> im(-im_max, im_max);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix d = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) d(i, i) = cplx(re(rng), im(rng));
  Matrix v = Matrix::Identity(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) v(i, j) += 0.3 * cplx(normal(rng), normal(rng)) / std::sqrt(2.0 * dim);
  }
  return v * d * v.inverse();
}

Matrix resolvent(const MatrixOperator& a, cplx z) {
  const Vector& spec = a.spectrum();
  for (Eigen::Index i = 0; i < spec.size(); ++i) {
    if (std::abs(z + spec(i)) <= 1e-10 * (1.0 + std::abs(z))) {
      throw Error(ErrorCode::SingularShift, "-z lies on the spectrum");
    }
  }
  const Eigen::Index n = a.dim();
  Eigen::PartialPivLU<Matrix> lu(z * Matrix::Identity(n, n) + a.matrix());
  return lu.solve(Matrix::Identity(n, n));
}

OperatorConstants gamma_estimate(const MatrixOperator& a, const GammaPolicy& policy, const QuadratureConfig& cfg) {
  cfg.validate();
  Budget budget(cfg.budget);
  const Eigen::Index n = a.dim();
  const Matrix& t = a.schur_triangular();
  const Matrix& u = a.schur_unitary();
  OperatorConstants out;
  out.K = a.K();
  out.M = a.M();
  if (policy.alpha_grid.empty()) {
    const double s = std::max(1.0, a.spectrum().cwiseAbs().maxCoeff());
    for (int k = -16; k <= 16; ++k) out.alpha_grid.push_back(s * std::pow(10.0, k / 4.0));
  } else {
    out.alpha_grid = policy.alpha_grid;
  }
  // Pairs (x, x*) in the Schur basis.
  std::vector<Vector> xs, ys;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      xs.push_back(u.adjoint() * Vector::Unit(n, i));
      ys.push_back(u.adjoint() * Vector::Unit(n, j));
    }
  }
  std::mt19937_64 rng(policy.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_unit = [&] {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(normal(rng), normal(rng));
    return Vector(u.adjoint() * (v / v.norm()));
  };
  for (int k = 0; k < policy.random_pairs; ++k) {
    xs.push_back(random_unit());
    ys.push_back(random_unit());
  }
  const std::size_t pairs = xs.size();
  std::vector<double> centers;
  for (double c : a.spectral_centers()) centers.push_back(-c);
  centers = merge_hints({}, centers);
  const std::vector<double> scales = a.spectral_scales();
  double lower = 0.0;
  double upper = 0.0;
  for (double alpha : out.alpha_grid) {
    auto integrand = [&](double beta) {
      Matrix shifted = t;
      shifted.diagonal().array() += cplx(alpha, beta);
      const Matrix r = upper_inverse(shifted);
      const Matrix r2 = r * r;
      Eigen::VectorXd v(pairs + 1);
      for (std::size_t p = 0; p < pairs; ++p) v(p) = std::abs(ys[p].dot(r2 * xs[p]));
      v(pairs) = operator_norm(r2);
      return v;
    };
    const quad::LineLayout layout = line_layout(centers, scales, alpha, cfg);
    quad::Result<Eigen::VectorXd> r = quad::integrate_line<Eigen::VectorXd>(
        integrand, layout, quad::Tolerance{1e-3 * cfg.abs_tol / alpha, 1e-2 * cfg.rel_tol}, budget);
    if (r.tail_divergent) throw Error(ErrorCode::TailDivergence, "resolvent integral tail does not converge");
    const Eigen::VectorXd values = (2.0 / pi) * alpha * r.value;
    lower = std::max(lower, values.head(pairs).maxCoeff());
    upper = std::max(upper, values(pairs));
    out.gamma_profile.push_back(values(pairs));
  }
  out.gamma_lower = std::max(lower, out.gamma_limit);
  out.gamma_upper = std::max(upper, out.gamma_limit);
  out.gamma_at_min_alpha = out.gamma_profile.front();
  const std::size_t probe = std::min<std::size_t>(4, out.gamma_profile.size() - 1);
  out.gamma_bounded = !(out.gamma_profile.front() > 1.05 * out.gamma_profile[probe] &&
                        out.gamma_profile.front() > 1.25 * out.gamma_limit);
  return out;
}

namespace {

template <class M>
CalcReport calculus_in_schur_basis(const HalfPlaneFunction& f, const MatrixOperator& a, const QuadratureConfig& cfg) {
  Budget budget(cfg.budget);
  const Eigen::Index n = a.dim();
  const M t = a.schur_triangular();
  const std::vector<double> centers = merge_hints(f.centers(), a.spectral_centers());
  const std::vector<double> scales = merge_hints(f.scales(), a.spectral_scales());
  auto integrand = [&](double alpha, double beta) -> M {
    M shifted = t;
    shifted.diagonal().array() += cplx(alpha, -beta);
    const M r = upper_inverse(shifted);
    return M((alpha * f.derivative(cplx(alpha, beta))) * (r * r));
  };
  auto layout = [&](double alpha) {
    quad::LineLayout l = line_layout(centers, scales, alpha, cfg);
    l.frequency = f.frequency();
    return l;
  };
  quad::Result<M> r = half_plane_integral<M>(integrand, layout, alpha_window(cfg, scales), cfg, budget,
                                             cfg.rel_tol_2d);
  if (r.tail_divergent) throw Error(ErrorCode::NotInBesov, "calculus integral diverges for " + f.name());
  CalcReport rep;
  rep.schur_value = f.at_infinity() * Matrix::Identity(n, n) - (2.0 / pi) * Matrix(r.value);
  rep.value = a.schur_unitary() * rep.schur_value * a.schur_unitary().adjoint();
  rep.error = (2.0 / pi) * r.error;
  rep.converged = r.converged;
  rep.evaluations = budget.used();
  return rep;
}

}  // namespace

CalcReport apply_calculus(const HalfPlaneFunction& f, const MatrixOperator& a, const QuadratureConfig& cfg) {
  cfg.validate();
  if (a.dim() <= 8) return calculus_in_schur_basis<SmallMatrix>(f, a, cfg);
  return calculus_in_schur_basis<Matrix>(f, a, cfg);
}

Matrix apply_hp(const RadonMeasure& mu, const MatrixOperator& op, const QuadratureConfig& cfg) {
  cfg.validate();
  const Matrix& a = op.matrix();
  const Eigen::Index n = op.dim();
  const Matrix id = Matrix::Identity(n, n);
  Matrix out = Matrix::Zero(n, n);
  for (const Atom& atom : mu.atoms()) out += atom.weight * matrix_exponential(-atom.location * a);
  for (const ExpPolyPiece& p : mu.pieces()) {
    if (!(p.rate.real() > 0.0)) throw Error(ErrorCode::TailDivergence, "exp-poly density is not integrable");
    Eigen::PartialPivLU<Matrix> lu(a + p.rate * id);
    Matrix inv = lu.solve(id);
    Matrix power = inv;
    double fact = 1.0;
    for (int k = 1; k <= p.power; ++k) {
      power = power * inv;
      fact *= k;
    }
    out += p.coeff * fact * matrix_exponential(-p.shift * a) * power;
  }
  for (const GridDensity& g : mu.grids()) {
    // Exact for the piecewise-linear interpolant: on a cell of width h,
    // int_0^h exp(-xA) ((1 - x/h) g0 + x/h g1) dx = g0 (P0 - P1) + g1 P1.
    const int refine = std::max(1, static_cast<int>(std::ceil(g.step * operator_norm(a))));
    const double h = g.step / refine;
    const Matrix ha = -h * a;
    Matrix p0 = Matrix::Zero(n, n);
    Matrix p1 = Matrix::Zero(n, n);
    Matrix term = id;
    double fact = 1.0;  // (k+1)!
    for (int k = 0; k < 40; ++k) {
      fact *= (k + 1);
      p0 += term / fact;
      p1 += term * ((k + 1.0) / (fact * (k + 2)));
      term = term * ha;
      if (term.cwiseAbs().maxCoeff() / fact < 1e-18) break;
    }
    p0 *= h;
    p1 *= h;
    const Matrix step_exp = matrix_exponential(ha);
    Matrix e = matrix_exponential(-g.t0 * a);
    Matrix acc = Matrix::Zero(n, n);
    for (std::size_t j = 0; j + 1 < g.values.size(); ++j) {
      for (int r = 0; r < refine; ++r) {
        const double f0 = static_cast<double>(r) / refine;
        const double f1 = static_cast<double>(r + 1) / refine;
        const cplx g0 = (1.0 - f0) * g.values[j] + f0 * g.values[j + 1];
        const cplx g1 = (1.0 - f1) * g.values[j] + f1 * g.values[j + 1];
        acc += e * (g0 * (p0 - p1) + g1 * p1);
        e = e * step_exp;
      }
    }
    out += acc;
  }
  if (!mu.callables().empty()) {
    Budget budget(cfg.budget);
    for (const CallableDensity& d : mu.callables()) {
      std::vector<double> breaks{0.0, d.cutoff};
      for (double b : d.breaks) {
        if (b > 0.0 && b < d.cutoff) breaks.push_back(b);
      }
      std::sort(breaks.begin(), breaks.end());
      auto integrand = [&](double t) { return Matrix(d.g(t) * matrix_exponential(-t * a)); };
      quad::Result<Matrix> r = quad::integrate<Matrix>(integrand, breaks,
                                                       quad::Tolerance{cfg.abs_tol, cfg.rel_tol}, budget);
      out += r.value;
    }
  }
  return out;
}

Matrix oracle_apply(const HalfPlaneFunction& f, const MatrixOperator& a) {
  const Eigen::Index n = a.dim();
  if (a.diagonalizable()) {
    const Matrix& v = a.eigenvectors();
    Vector fl(n);
    for (Eigen::Index i = 0; i < n; ++i) fl(i) = f(a.spectrum()(i));
    return v * fl.asDiagonal() * v.inverse();
  }
  const cplx mean = a.spectrum().mean();
  const double spread = (a.spectrum().array() - mean).abs().maxCoeff();
  if (n <= 3 && spread <= 1e-6 * (1.0 + std::abs(mean))) {
    const Matrix id = Matrix::Identity(n, n);
    const Matrix nil = a.matrix() - mean * id;
    Matrix out = f(mean) * id + f.derivative(mean) * nil;
    if (n == 3) out += 0.5 * f.second_derivative(mean) * nil * nil;
    return out;
  }
  throw Error(ErrorCode::NotDiagonalizable, "eigenvector matrix is too ill-conditioned for the oracle");
}

double homomorphism_check(const HalfPlaneFunction& f, const HalfPlaneFunction& g, const MatrixOperator& a,
                          const QuadratureConfig& cfg) {
  const Matrix fg = apply_calculus(f * g, a, cfg).value;
  const Matrix fa = apply_calculus(f, a, cfg).value;
  const Matrix ga = apply_calculus(g, a, cfg).value;
  return operator_norm(fg - fa * ga);
}

BoundCheck bound_check(const HalfPlaneFunction& f, const MatrixOperator& a, const QuadratureConfig& cfg) {
  BoundCheck out;
  out.lhs = operator_norm(apply_calculus(f, a, cfg).value);
  out.rhs = a.constants(cfg).gamma_upper * besov_norm(f, cfg).value;
  out.holds = out.lhs <= out.rhs + 1e-6 * (1.0 + out.rhs);
  return out;
}

SpectralReport spectral_check(const HalfPlaneFunction& f, const MatrixOperator& a, const QuadratureConfig& cfg,
                              double eigen_tol) {
  const CalcReport calc = apply_calculus(f, a, cfg);
  const Eigen::Index n = a.dim();
  SpectralReport rep;
  // The Schur-basis result is upper triangular, so its eigenvalues are
  // exactly its diagonal.
  rep.computed = calc.schur_value.diagonal();
  Vector mapped(n);
  for (Eigen::Index i = 0; i < n; ++i) mapped(i) = f(a.spectrum()(i));
  std::vector<Eigen::Index> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto cost = [&](const std::vector<Eigen::Index>& p) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) worst = std::max(worst, std::abs(rep.computed(i) - mapped(p[i])));
    return worst;
  };
  std::vector<Eigen::Index> best = perm;
  double best_cost = cost(perm);
  if (n <= 8) {
    while (std::next_permutation(perm.begin(), perm.end())) {
      const double c = cost(perm);
      if (c < best_cost) {
        best_cost = c;
        best = perm;
      }
    }
  } else {
    std::vector<bool> used(n, false);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index pick = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (!used[j] && (pick < 0 || std::abs(rep.computed(i) - mapped(j)) < std::abs(rep.computed(i) - mapped(pick)))) {
          pick = j;
        }
      }
      used[pick] = true;
      best[i] = pick;
    }
    best_cost = cost(best);
  }
  rep.mapped.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) rep.mapped(i) = mapped(best[i]);
  rep.max_mismatch = best_cost;
  rep.multiset_equal = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(rep.computed(i) - rep.mapped(i)) > eigen_tol * std::max(1.0, std::abs(rep.mapped(i)))) {
      rep.multiset_equal = false;
    }
  }
  double far = 0.0;
  for (int j = 0; j <= 16; ++j) {
    const double theta = -0.5 * pi + pi * j / 16.0;
    far = std::max(far, std::abs(f(std::polar(1e6, theta))));
  }
  rep.vanishes_at_infinity = far < 1e-3;
  return rep;
}

ResolventConditionReport resolvent_condition_check(const MatrixOperator& a, const QuadratureConfig& cfg) {
  const OperatorConstants c = gamma_estimate(a, GammaPolicy{}, cfg);
  ResolventConditionReport rep;
  rep.finite = std::all_of(c.gamma_profile.begin(), c.gamma_profile.end(),
                           [](double v) { return std::isfinite(v); });
  rep.uniformly_bounded = c.gamma_bounded;
  rep.sup = c.gamma_lower;
  rep.margin = c.gamma_upper;
  return rep;
}

}  // namespace besov
