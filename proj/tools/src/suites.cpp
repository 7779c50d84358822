#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include "besov/approx.hpp"
#include "besov/dynamics.hpp"
#include "besov/error.hpp"
#include "besov/families.hpp"
#include "besov/measures.hpp"
#include "besov/norms.hpp"
#include "besov/operator.hpp"
#include "besov/special.hpp"
#include "table.hpp"

namespace besov::cli {

namespace {

using Task = std::function<std::vector<Check>()>;

constexpr std::uint64_t kSeed = 20240607;

Check le(const std::string& suite, const std::string& name, double value, double bound) {
  return {suite, name, value, bound, value <= bound};
}

Check flag(const std::string& suite, const std::string& name, bool ok) {
  return {suite, name, ok ? 0.0 : 1.0, 0.0, ok};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt(cplx z) {
  if (z.imag() == 0.0) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0 ? "" : "+") + fmt(z.imag()) + "i";
}

double rel(cplx a, cplx b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

std::vector<NamedFamily> family_set() {
  return {{FamilyKind::Cayley, 3.0},          {FamilyKind::ExpReciprocal, 2.0},
          {FamilyKind::RegularizedExp, 1.0},  {FamilyKind::Exponential, 1.0},
          {FamilyKind::Resolvent, {1.0, 0.5}}, {FamilyKind::ResolventSquare, 2.0},
          {FamilyKind::Constant, {1.0, -1.0}}};
}

std::vector<cplx> random_points(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(0.0, 3.0), im(-3.0, 3.0);
  std::vector<cplx> out;
  while (out.size() < count) {
    const double x = re(rng);
    const double y = im(rng);
    if (x > 0.0) out.emplace_back(x, y);
  }
  return out;
}

struct NamedMatrix {
  std::string name;
  Matrix m;
};

std::vector<NamedMatrix> random_matrices() {
  std::vector<NamedMatrix> out;
  for (int s = 1; s <= 10; ++s) {
    const int dim = 2 + s % 5;
    out.push_back({"random(" + std::to_string(s) + "," + std::to_string(dim) + ")", random_stable_matrix(s, dim)});
  }
  return out;
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += std::log(x[k]) / n;
    my += std::log(y[k]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sxy += (std::log(x[k]) - mx) * (std::log(y[k]) - my);
    sxx += (std::log(x[k]) - mx) * (std::log(x[k]) - mx);
  }
  return sxy / sxx;
}

// Ratios v[k+1] / v[k] for k >= first; each must stay below 1.
void decreasing(std::vector<Check>& out, const std::string& suite, const std::string& name,
                const std::vector<double>& params, const std::vector<double>& v, std::size_t first) {
  for (std::size_t k = first; k + 1 < v.size(); ++k) {
    const double ratio = v[k] > 0.0 ? v[k + 1] / v[k] : (v[k + 1] > 0.0 ? INFINITY : 0.0);
    Check c = le(suite, name + " ratio " + fmt(params[k + 1]) + "/" + fmt(params[k]), ratio, 1.0);
    c.pass = ratio < 1.0 || (v[k + 1] == 0.0 && v[k] == 0.0);
    out.push_back(c);
  }
}

// --- reproduce -------------------------------------------------------------

std::vector<Task> reproduce_tasks(const std::string& suite, const QuadratureConfig& cfg) {
  std::vector<Task> tasks;
  if (suite == "poisson") {
    const std::vector<cplx> zs = random_points(5, kSeed + 1);
    for (const NamedFamily& fam : family_set()) {
      const HalfPlaneFunction f = fam.function();
      if (!f.has_boundary()) continue;
      for (cplx z : zs) {
        tasks.push_back([=] {
          const cplx v = poisson_reconstruct(f, z, cfg).value;
          return std::vector<Check>{le(suite, fam.label() + " z=" + fmt(z), rel(v, f(z)), 1e-4)};
        });
      }
    }
    return tasks;
  }
  static const std::map<std::string, ReproduceVariant> variants{{"first", ReproduceVariant::First},
                                                                {"re", ReproduceVariant::Re},
                                                                {"im", ReproduceVariant::Im},
                                                                {"second", ReproduceVariant::Second}};
  const ReproduceVariant variant = variants.at(suite);
  const std::vector<cplx> zs = random_points(20, kSeed);
  for (const NamedFamily& fam : family_set()) {
    const HalfPlaneFunction f = fam.function();
    for (cplx z : zs) {
      tasks.push_back([=] {
        const cplx v = reproduce(f, z, variant, cfg).value;
        return std::vector<Check>{le(suite, fam.label() + " z=" + fmt(z), rel(v, f(z)), 1e-4)};
      });
    }
  }
  return tasks;
}

// --- pairing ---------------------------------------------------------------

std::vector<Task> pairing_tasks(const std::string& suite, const QuadratureConfig& cfg) {
  std::vector<Task> tasks;
  if (suite == "grid") {
    const std::vector<cplx> g_params{1.0, 2.0, {0.5, 1.0}};
    std::vector<NamedFamily> fs;
    for (cplx a : {cplx(1.0), cplx(2.0), cplx(1.0, 1.0)}) fs.push_back({FamilyKind::Resolvent, a});
    for (double a : {0.5, 1.0, 2.0}) fs.push_back({FamilyKind::Exponential, a});
    for (double t : {0.5, 1.0, 4.0}) fs.push_back({FamilyKind::ExpReciprocal, t});
    for (cplx a : g_params) {
      for (const NamedFamily& fam : fs) {
        tasks.push_back([=] {
          const HalfPlaneFunction g = resolvent_square(a);
          const HalfPlaneFunction f = fam.function();
          const cplx green = green_pairing(g, f, cfg).value;
          const cplx boundary = boundary_pairing(g, f, cfg).value;
          return std::vector<Check>{le(suite, "g=resolvent2:" + fmt(a) + " f=" + fam.label(), rel(green, boundary), 1e-4)};
        });
      }
    }
    return tasks;
  }
  // analytic
  const HalfPlaneFunction r1 = resolvent_function(1.0);
  const HalfPlaneFunction r1sq = resolvent_square(1.0);
  auto value = [&](const std::string& name, std::function<cplx()> compute, cplx expected) {
    tasks.push_back([=] { return std::vector<Check>{le(suite, name, rel(compute(), expected), 1e-4)}; });
  };
  value("green(r_1, r_1) = pi/4", [=] { return green_pairing(r1, r1, cfg).value; }, pi / 4.0);
  value("green(r_1^2, r_1) = pi/8", [=] { return green_pairing(r1sq, r1, cfg).value; }, pi / 8.0);
  value("boundary(r_1^2, r_1) = pi/8", [=] { return boundary_pairing(r1sq, r1, cfg).value; }, pi / 8.0);
  value("green(r_1^2, r_2) = pi/18", [=] { return green_pairing(r1sq, resolvent_function(2.0), cfg).value; },
        pi / 18.0);
  value("boundary(r_1^2, r_2) = pi/18",
        [=] { return boundary_pairing(r1sq, resolvent_function(2.0), cfg).value; }, pi / 18.0);
  value("green(r_1^2, const) = 0", [=] { return green_pairing(r1sq, constant_function(3.0), cfg).value; }, 0.0);
  value("boundary(r_1^2, 2i r_1) = 2i pi/8",
        [=] { return boundary_pairing(r1sq, cplx(0.0, 2.0) * r1, cfg).value; }, cplx(0.0, 2.0) * pi / 8.0);
  return tasks;
}

// --- calculus --------------------------------------------------------------

std::vector<Task> calculus_tasks(const std::string& suite, const QuadratureConfig& cfg) {
  std::vector<Task> tasks;
  if (suite == "oracle") {
    for (const NamedMatrix& nm : random_matrices()) {
      for (const NamedFamily& fam : family_set()) {
        tasks.push_back([=] {
          const MatrixOperator a(nm.m);
          const HalfPlaneFunction f = fam.function();
          const Matrix oracle = oracle_apply(f, a);
          const Matrix calc = apply_calculus(f, a, cfg).value;
          const double err = operator_norm(calc - oracle) / (1.0 + operator_norm(oracle));
          return std::vector<Check>{le(suite, fam.label() + " on " + nm.name, err, 1e-4)};
        });
      }
    }
  } else if (suite == "resolvent") {
    const std::vector<NamedMatrix> ms{{"random(1,3)", random_stable_matrix(1, 3)},
                                      {"random(2,4)", random_stable_matrix(2, 4)},
                                      {"jordan(3,1)", jordan_matrix(3, 1.0)}};
    const std::vector<cplx> zs = random_points(10, kSeed + 2);
    for (const NamedMatrix& nm : ms) {
      for (cplx z : zs) {
        tasks.push_back([=] {
          const MatrixOperator a(nm.m);
          const Matrix r = resolvent(a, z);
          const Matrix calc = apply_calculus(resolvent_function(z), a, cfg).value;
          const double err = operator_norm(calc - r) / std::max(1.0, operator_norm(r));
          return std::vector<Check>{le(suite, "r_z z=" + fmt(z) + " on " + nm.name, err, 1e-6)};
        });
      }
    }
  } else if (suite == "homomorphism") {
    const std::vector<NamedFamily> fs{{FamilyKind::Resolvent, 1.0},
                                      {FamilyKind::Exponential, 1.0},
                                      {FamilyKind::ExpReciprocal, 1.0},
                                      {FamilyKind::Cayley, 2.0},
                                      {FamilyKind::ResolventSquare, {0.5, 1.0}}};
    const std::vector<NamedMatrix> ms{{"random(3,5)", random_stable_matrix(3, 5)},
                                      {"jordan(2,1)", jordan_matrix(2, 1.0)},
                                      {"jordan(3,0.5+i)", jordan_matrix(3, {0.5, 1.0})}};
    for (const NamedMatrix& nm : ms) {
      for (std::size_t i = 0; i < fs.size(); ++i) {
        for (std::size_t j = i + 1; j < fs.size(); ++j) {
          tasks.push_back([=, f = fs[i], g = fs[j]] {
            const MatrixOperator a(nm.m);
            const double r = homomorphism_check(f.function(), g.function(), a, cfg);
            return std::vector<Check>{le(suite, f.label() + " * " + g.label() + " on " + nm.name, r, 1e-4)};
          });
        }
      }
    }
  } else if (suite == "bound" || suite == "spectral") {
    std::vector<NamedMatrix> ms{{"random(1,3)", random_stable_matrix(1, 3)},
                                {"random(4,6)", random_stable_matrix(4, 6)},
                                {"jordan(2,1)", jordan_matrix(2, 1.0)},
                                {"jordan(3,0.5+i)", jordan_matrix(3, {0.5, 1.0})},
                                {"diag(1,2)", diagonal_matrix({1.0, 2.0})}};
    for (const NamedMatrix& nm : ms) {
      for (const NamedFamily& fam : family_set()) {
        tasks.push_back([=] {
          const MatrixOperator a(nm.m);
          const HalfPlaneFunction f = fam.function();
          const std::string name = fam.label() + " on " + nm.name;
          if (suite == "bound") {
            const BoundCheck b = bound_check(f, a, cfg);
            Check c = le(suite, name + " ||f(A)|| <= gamma ||f||_B", b.lhs, b.rhs);
            c.pass = b.holds;
            return std::vector<Check>{c};
          }
          const SpectralReport s = spectral_check(f, a, cfg, 1e-8);
          Check c = le(suite, name + " sigma(f(A)) = f(sigma(A))", s.max_mismatch, 1e-8);
          c.pass = s.multiset_equal;
          return std::vector<Check>{c};
        });
      }
    }
  } else if (suite == "hp") {
    const std::vector<std::pair<std::string, RadonMeasure>> mus{
        {"delta_0 - 2 e^-t dt", RadonMeasure::dirac(0.0) - RadonMeasure::exp_poly(2.0, 0, 1.0)},
        {"e^-t dt", RadonMeasure::exp_poly(1.0, 0, 1.0)},
        {"delta_1", RadonMeasure::dirac(1.0)},
        {"t e^-(2+i)t dt", RadonMeasure::exp_poly(1.0, 1, {2.0, 1.0})}};
    const std::vector<NamedMatrix> ms{{"random(2,4)", random_stable_matrix(2, 4)},
                                      {"jordan(2,1)", jordan_matrix(2, 1.0)}};
    for (const auto& [label, mu] : mus) {
      for (const NamedMatrix& nm : ms) {
        tasks.push_back([=, label = label, mu = mu] {
          const MatrixOperator a(nm.m);
          const Matrix hp = apply_hp(mu, a, cfg);
          const Matrix calc = apply_calculus(laplace_fn(mu, cfg), a, cfg).value;
          const double err = operator_norm(hp - calc) / (1.0 + operator_norm(hp));
          return std::vector<Check>{le(suite, label + " on " + nm.name, err, 1e-6)};
        });
      }
    }
  } else if (suite == "gamma") {
    tasks.push_back([=] {
      const MatrixOperator zero(Matrix::Zero(1, 1));
      const OperatorConstants& c = zero.constants(cfg);
      return std::vector<Check>{le(suite, "gamma lower for [0] = 2", std::abs(c.gamma_lower - 2.0), 1e-4),
                                le(suite, "gamma upper for [0] = 2", std::abs(c.gamma_upper - 2.0), 1e-4),
                                flag(suite, "gamma bounded for [0]", c.gamma_bounded)};
    });
    tasks.push_back([=] {
      const MatrixOperator a(diagonal_matrix({1.0, 2.0}));
      const OperatorConstants& c = a.constants(cfg);
      return std::vector<Check>{le(suite, "gamma upper for diag(1,2) = 2", std::abs(c.gamma_upper - 2.0), 1e-4)};
    });
    tasks.push_back([=] {
      const MatrixOperator a(jordan_matrix(2, 1.0));
      const ResolventConditionReport r = resolvent_condition_check(a, cfg);
      return std::vector<Check>{flag(suite, "jordan(2,1) resolvent condition finite and bounded",
                                     r.finite && r.uniformly_bounded),
                                le(suite, "jordan(2,1) sampled gamma <= operator-norm gamma", r.sup,
                                   r.margin * (1.0 + 1e-9))};
    });
  }
  return tasks;
}

// --- approx ----------------------------------------------------------------

std::vector<Task> approx_tasks(const std::string& suite, const QuadratureConfig& cfg) {
  std::vector<Task> tasks;
  constexpr double tol = 1e-6;
  const std::vector<std::pair<NamedFamily, double>> instances{{{FamilyKind::Resolvent, 1.0}, 4.0},
                                                              {{FamilyKind::Exponential, 1.0}, 8.0},
                                                              {{FamilyKind::ExpReciprocal, 1.0}, 16.0},
                                                              {{FamilyKind::Cayley, 2.0}, 8.0}};
  if (suite == "kerror" || suite == "hest") {
    for (const auto& [fam, m] : instances) {
      tasks.push_back([=, fam = fam, m = m] {
        const HalfPlaneFunction f = fam.function();
        const InequalityReport r = suite == "kerror" ? k_error_check(f, m, cfg) : k_seminorm_check(f, m, cfg);
        return std::vector<Check>{le(suite, fam.label() + " m=" + fmt(m), r.lhs, r.rhs + tol)};
      });
    }
  } else if (suite == "hstrip") {
    const std::vector<std::tuple<NamedFamily, cplx, double>> cases{{{FamilyKind::Resolvent, 1.0}, 1.0, 8.0},
                                                                    {{FamilyKind::Resolvent, 1.0}, {0.5, 1.0}, 4.0},
                                                                    {{FamilyKind::Exponential, 1.0}, 1.0, 8.0},
                                                                    {{FamilyKind::ExpReciprocal, 1.0}, {1.0, -2.0}, 16.0}};
    for (const auto& [fam, z, n] : cases) {
      tasks.push_back([=, fam = fam, z = z, n = n] {
        const StripReport r = v_strip_error(derivative_field(fam.function()), z, n, cfg);
        return std::vector<Check>{le(suite, fam.label() + "' z=" + fmt(z) + " n=" + fmt(n), r.observed, r.bound + tol)};
      });
    }
  } else if (suite == "bc") {
    const std::vector<cplx> probes{1.0, {0.5, 1.0}, {2.0, -1.0}};
    const std::vector<std::pair<NamedFamily, NamedFamily>> pairs{
        {{FamilyKind::Resolvent, 1.0}, {FamilyKind::Exponential, 1.0}},
        {{FamilyKind::ExpReciprocal, 1.0}, {FamilyKind::Resolvent, 2.0}},
        {{FamilyKind::Cayley, 2.0}, {FamilyKind::Constant, 0.0}}};
    for (const auto& [f, h] : pairs) {
      tasks.push_back([=, f = f, h = h] {
        const QBoundReport r = q_bound_check(f.function(), h.function(), probes, cfg);
        const std::string name = "f=" + f.label() + " h=" + h.label();
        return std::vector<Check>{le(suite, name + " ||Qg||_B0 <= (8/pi)||g||_W", r.lhs, r.rhs + tol),
                                  le(suite, name + " |Qg - f + f(inf)|", r.residual, 1e-4)};
      });
    }
  } else if (suite == "kernel") {
    const std::function<cplx(double)> one = [](double) { return cplx(1.0); };
    const std::function<cplx(double)> lorentz = [](double b) { return cplx(1.0 / (1.0 + b * b)); };
    const std::function<cplx(double)> wave = [](double b) { return cplx(std::cos(b)); };
    const std::function<cplx(double)> step = [](double b) { return cplx(std::tanh(b)); };
    tasks.push_back([=] {
      std::vector<Check> out;
      const KernelValue v = g_kernel(1.0, lorentz, 1.0, 1.0, cfg);
      out.push_back(le(suite, "G(1, 1/(1+b^2))(1) = pi/9", std::abs(v.value - pi / 9.0), tol));
      const KernelValue c = g_kernel(1.0, one, 1.0, {0.5, 1.0}, cfg);
      out.push_back(le(suite, "G(1, 1)(0.5+i) = 0", std::abs(c.value), tol));
      for (double alpha : {0.5, 1.0, 2.0}) {
        for (cplx z : {cplx(0.1, 0.0), cplx(1.0, 2.0), cplx(3.0, -1.0)}) {
          const KernelValue w = g_kernel(alpha, wave, 1.0, z, cfg);
          out.push_back(le(suite, "|G(" + fmt(alpha) + ", cos)(" + fmt(z) + ")| <= pi/alpha", std::abs(w.value),
                           w.sup_bound + tol));
        }
      }
      return out;
    });
    for (double alpha : {0.5, 1.0}) {
      for (const auto& [label, phi] : {std::pair{"1/(1+b^2)", lorentz}, std::pair{"tanh", step}}) {
        tasks.push_back([=, label = std::string(label), phi = phi] {
          const InequalityReport r = g_kernel_check(alpha, phi, 1.0, cfg);
          return std::vector<Check>{le(suite, "||G(" + fmt(alpha) + ", " + label + ")||_B0 <= (4/alpha) sup|phi|",
                                       r.lhs, r.rhs + tol)};
        });
      }
    }
  } else if (suite == "ktriangle") {
    const std::vector<double> ms{4.0, 8.0, 16.0, 32.0};
    for (const NamedFamily& fam : std::vector<NamedFamily>{{FamilyKind::Resolvent, 1.0},
                                                           {FamilyKind::ResolventSquare, {1.0, 1.0}},
                                                           {FamilyKind::Cayley, 2.0}}) {
      tasks.push_back([=] {
        const HalfPlaneFunction f = fam.function();
        std::vector<double> lhs;
        for (double m : ms) lhs.push_back(besov_seminorm(f - k_triangle(f, m), cfg).value);
        std::vector<Check> out;
        decreasing(out, suite, "||f - K_m f||_B0 " + fam.label(), ms, lhs, 1);
        return out;
      });
    }
  } else if (suite == "qtriangle") {
    const std::vector<double> ns{4.0, 8.0, 16.0, 32.0};
    for (const NamedFamily& fam : std::vector<NamedFamily>{{FamilyKind::Resolvent, 1.0}, {FamilyKind::ExpReciprocal, 1.0}}) {
      tasks.push_back([=] {
        const HalfPlaneFunction f = fam.function();
        std::vector<double> errors;
        std::vector<Check> out;
        for (double n : ns) {
          const RadonMeasure mu = q_triangle_measure(f, n, cfg);
          errors.push_back(strip_error(mu, f, 1.0, 4.0, cfg));
          out.push_back(le(suite, "hp(Q_" + fmt(n) + " " + fam.label() + ") <= (4n^2/pi)||f'||_W + |f(inf)|",
                           hp_norm(mu, cfg).value, q_triangle_hp_bound(f, n, cfg) + tol));
        }
        decreasing(out, suite, "strip error c=1 " + fam.label(), ns, errors, 0);
        return out;
      });
    }
  }
  return tasks;
}

// --- semigroup -------------------------------------------------------------

std::vector<Task> semigroup_tasks(const std::string& suite, const QuadratureConfig& cfg) {
  std::vector<Task> tasks;
  const Matrix d12 = diagonal_matrix({1.0, 2.0});
  if (suite == "evolve") {
    tasks.push_back([=] {
      std::vector<Check> out;
      const MatrixOperator a1(diagonal_matrix({1.0}));
      const MatrixOperator a2(diagonal_matrix({2.0}));
      const HalfPlaneFunction e1 = exponential(1.0);
      for (double t : {0.5, 1.0, 3.0}) {
        out.push_back(le(suite, "e_1(tA) A=[1] t=" + fmt(t), std::abs(evolve(e1, a1, t, cfg)(0, 0) - std::exp(-t)), 1e-8));
      }
      out.push_back(le(suite, "r_1(3A) A=[2]", std::abs(evolve(resolvent_function(1.0), a2, 3.0, cfg)(0, 0) - 1.0 / 7.0), 1e-8));
      const cplx z(1.0, 0.5);
      out.push_back(le(suite, "e_1(zA) A=[1] z=1+0.5i", std::abs(evolve(e1, a1, z, cfg)(0, 0) - std::exp(-z)), 1e-8));
      const MatrixOperator j(jordan_matrix(2, 1.0));
      const HalfPlaneFunction g1 = exp_reciprocal(1.0);
      for (double t : {0.3, 2.0}) {
        const Matrix via_rescale = apply_calculus(rescale(g1, t), j, cfg).value;
        const Matrix oracle = oracle_apply(g1, MatrixOperator(t * jordan_matrix(2, 1.0)));
        out.push_back(le(suite, "g_1(tA) = rescale route A=jordan(2,1) t=" + fmt(t),
                         operator_norm(evolve(g1, j, t, cfg) - via_rescale), 1e-8));
        out.push_back(le(suite, "g_1(tA) = oracle A=jordan(2,1) t=" + fmt(t), operator_norm(via_rescale - oracle), 1e-8));
      }
      return out;
    });
  } else if (suite == "continuity") {
    tasks.push_back([=] {
      std::vector<Check> out;
      const MatrixOperator j(jordan_matrix(2, 1.0));
      const HalfPlaneFunction g1 = exp_reciprocal(1.0);
      std::vector<double> coarse, fine;
      for (int k = 0; k <= 10; ++k) coarse.push_back(0.2 * k);
      for (int k = 0; k <= 20; ++k) fine.push_back(0.1 * k);
      const double c = continuity_scan(g1, j, coarse, cfg).max_jump;
      const double f = continuity_scan(g1, j, fine, cfg).max_jump;
      out.push_back(le(suite, "g_1 jordan(2,1) jump ratio under halving", f / c, 0.6));
      const MatrixOperator a(d12);
      const HalfPlaneFunction e1 = exponential(1.0);
      const double j1 = continuity_scan(e1, a, {0.0, 1e-2}, cfg).max_jump;
      const double j2 = continuity_scan(e1, a, {0.0, 1e-3}, cfg).max_jump;
      out.push_back(le(suite, "e_1 diag(1,2) ||f(eps A) - I|| shrinks with eps", j2 / j1, 0.2));
      return out;
    });
  } else if (suite == "gen2") {
    const std::vector<NamedFamily> fs{{FamilyKind::Exponential, 1.0},
                                      {FamilyKind::Resolvent, 1.0},
                                      {FamilyKind::ExpReciprocal, 1.0},
                                      {FamilyKind::ResolventSquare, 1.0}};
    const std::vector<std::pair<NamedMatrix, Vector>> cases{
        {{"diag(1,2)", d12}, Vector::Ones(2)},
        {{"jordan(2,1)", jordan_matrix(2, 1.0)}, (Vector(2) << cplx(1.0), cplx(0.0, 1.0)).finished()}};
    for (const auto& [nm, x] : cases) {
      for (const NamedFamily& fam : fs) {
        tasks.push_back([=, nm = nm, x = x] {
          const DerivativeReport r = short_time_derivative(fam.function(), MatrixOperator(nm.m), x, cfg);
          return std::vector<Check>{le(suite, fam.label() + " on " + nm.name, r.rel_error, 1e-4)};
        });
      }
    }
  } else if (suite == "inversion") {
    const std::vector<double> n_grid{50.0, 100.0, 200.0, 400.0, 800.0};
    const std::vector<std::tuple<NamedFamily, NamedMatrix, double>> complex_cases{
        {{FamilyKind::Resolvent, 1.0}, {"[1]", diagonal_matrix({1.0})}, 1.0},
        {{FamilyKind::Exponential, 1.0}, {"[1]", diagonal_matrix({1.0})}, 0.5},
        {{FamilyKind::Resolvent, 1.0}, {"jordan(2,1)", jordan_matrix(2, 1.0)}, 1.0}};
    for (const auto& [fam, nm, sigma] : complex_cases) {
      tasks.push_back([=, fam = fam, nm = nm, sigma = sigma] {
        const InversionReport r = complex_inversion(fam.function(), MatrixOperator(nm.m), sigma, n_grid, cfg);
        const std::string name = fam.label() + "' on " + nm.name + " sigma=" + fmt(sigma);
        return std::vector<Check>{le(suite, name + " squared resolvent", r.squared_error, 1e-5),
                                  le(suite, name + " first power limit", r.first.limit_error, 1e-5)};
      });
    }
    const std::vector<std::tuple<NamedMatrix, double, double>> semigroup_cases{
        {{"[1]", diagonal_matrix({1.0})}, 1.0, 0.5},
        {{"jordan(2,1)", jordan_matrix(2, 1.0)}, 2.0, 1.0},
        {{"random(2,4)", random_stable_matrix(2, 4)}, 0.5, 1.0}};
    for (const auto& [nm, t, sigma] : semigroup_cases) {
      tasks.push_back([=, nm = nm, t = t, sigma = sigma] {
        const MatrixOperator a(nm.m);
        const InversionReport r = semigroup_inversion(a, t, sigma, n_grid, cfg);
        const Matrix expm = matrix_exponential(-t * nm.m);
        const std::string name = "exp(-tA) on " + nm.name + " t=" + fmt(t);
        return std::vector<Check>{le(suite, name + " squared resolvent", operator_norm(r.squared - expm), 1e-5),
                                  le(suite, name + " Bromwich limit", operator_norm(r.first.limit - expm), 1e-5)};
      });
    }
  } else if (suite == "decay") {
    const std::vector<NamedMatrix> ms{{"diag(1,2)", d12},
                                      {"diag(0,1)", diagonal_matrix({0.0, 1.0})},
                                      {"jordan(2,1)", jordan_matrix(2, 1.0)}};
    const std::vector<NamedFamily> fs{{FamilyKind::Resolvent, 1.0}, {FamilyKind::ResolventSquare, 2.0}};
    for (const NamedMatrix& nm : ms) {
      for (const NamedFamily& fam : fs) {
        tasks.push_back([=] {
          const DecayReport r = long_time_decay(fam.function(), MatrixOperator(nm.m), default_decay_grid(), cfg);
          const std::string branch = r.zero_in_spectrum ? "plateau >= |f(0)|" : "decays to 0";
          return std::vector<Check>{flag(suite, fam.label() + " on " + nm.name + " " + branch, r.holds)};
        });
      }
    }
  } else if (suite == "holomorphy") {
    tasks.push_back([=] {
      std::vector<cplx> points;
      for (double r : {0.5, 1.0, 2.0}) {
        for (double th : {-pi / 4.0, 0.0, pi / 4.0}) points.push_back(std::polar(r, th));
      }
      const double res = holomorphy_residual(exponential(1.0), MatrixOperator(d12), points, 1e-3, cfg);
      return std::vector<Check>{le(suite, "e_1 diag(1,2) Cauchy-Riemann residual", res, 1e-5)};
    });
  }
  return tasks;
}

// --- property --------------------------------------------------------------

std::vector<Task> property_tasks(const std::string& suite, const QuadratureConfig& cfg) {
  std::vector<Task> tasks;
  if (suite == "scaling") {
    for (const NamedFamily& fam : family_set()) {
      tasks.push_back([=] {
        const HalfPlaneFunction f = fam.function();
        const double base = besov_norm(f, cfg).value;
        std::vector<Check> out;
        for (double b : {0.1, 1.0, 7.0, 50.0}) {
          const double v = besov_norm(rescale(f, b), cfg).value;
          out.push_back(le(suite, fam.label() + " b=" + fmt(b), std::abs(v - base) / base, 1e-4));
        }
        return out;
      });
    }
  } else if (suite == "shift") {
    for (const NamedFamily& fam : family_set()) {
      tasks.push_back([=] {
        const HalfPlaneFunction f = fam.function();
        const double base = besov_norm(f, cfg).value;
        std::vector<Check> out;
        for (cplx a : {cplx(1.0), cplx(0.5, 2.0)}) {
          out.push_back(le(suite, fam.label() + " a=" + fmt(a), besov_norm(shift(f, a), cfg).value, base + 1e-6));
        }
        return out;
      });
    }
  } else if (suite == "obstruction") {
    const HalfPlaneFunction one = constant_function(1.0);
    const std::vector<std::pair<std::string, HalfPlaneFunction>> fs{
        {"r_1", resolvent_function(1.0)},
        {"r_{0.5+i}", resolvent_function({0.5, 1.0})},
        {"r_2^2", resolvent_square(2.0)},
        {"f_2 - 1", cayley(2) - one},
        {"g_1 - 1", exp_reciprocal(1.0) - one}};
    for (const auto& [label, f] : fs) {
      tasks.push_back([=, label = label, f = f] {
        const HalfPlaneFunction e1 = exponential(1.0);
        const double v = besov_seminorm(f * e1 - e1, cfg).value;
        return std::vector<Check>{le(suite, "1 - ||f e_1 - e_1||_B0 for f=" + label, 1.0 - v, 1e-3)};
      });
    }
  } else if (suite == "derivative") {
    const std::vector<cplx> zs = random_points(10, kSeed + 3);
    for (const NamedFamily& fam : family_set()) {
      tasks.push_back([=] {
        const HalfPlaneFunction f = fam.function();
        const double sup = sup_norm(f, cfg).value;
        const double semi = besov_seminorm(f, cfg).value;
        std::vector<Check> out;
        double worst = 0.0, cauchy = 0.0;
        for (cplx z : zs) {
          worst = std::max(worst, std::abs(f.derivative(z)) * 2.0 * z.real());
          const double scale = std::abs(f.derivative(z)) + 1e-300;
          if (std::abs(f.derivative(z)) > 1e-12) {
            cauchy = std::max(cauchy, std::abs(cauchy_derivative(f.parts().value, z, 1) - f.derivative(z)) / scale);
          }
        }
        out.push_back(le(suite, fam.label() + " 2 Re z |f'(z)| <= ||f||_inf", worst, sup * (1.0 + cfg.rel_tol)));
        out.push_back(le(suite, fam.label() + " ||f||_inf <= |f(inf)| + ||f||_B0", sup,
                         std::abs(f.at_infinity()) + semi + 1e-6));
        out.push_back(le(suite, fam.label() + " exact f' = Cauchy f'", cauchy, 1e-6));
        return out;
      });
    }
  } else if (suite == "convergence") {
    tasks.push_back([=] {
      const HalfPlaneFunction g = resolvent_function(1.0) * exponential(1.0);
      const std::vector<double> ns{1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
      std::vector<double> v;
      for (double n : ns) v.push_back(besov_norm(exponential(1.0 / n) * g - g, cfg).value);
      std::vector<Check> out;
      decreasing(out, suite, "||e_{1/n} g - g||_B", ns, v, 1);
      return out;
    });
  }
  return tasks;
}

// --- families --------------------------------------------------------------

std::vector<Task> family_tasks(const std::string& suite, const QuadratureConfig& cfg) {
  std::vector<Task> tasks;
  if (suite == "exact") {
    for (double t : {0.5, 1.0, 2.0, 10.0, 100.0}) {
      tasks.push_back([=] {
        const double exact = exprecip_besov_exact(t);
        const double v = besov_norm(exp_reciprocal(t), cfg).value;
        return std::vector<Check>{le(suite, "exprecip t=" + fmt(t), std::abs(v - exact) / exact, 1e-3)};
      });
    }
    for (int n : {1, 2, 4, 8, 16}) {
      tasks.push_back([=] {
        const double exact = cayley_besov_exact(n);
        const double v = besov_norm(cayley(n), cfg).value;
        return std::vector<Check>{le(suite, "cayley n=" + std::to_string(n), std::abs(v - exact) / exact, 1e-3)};
      });
    }
  } else if (suite == "bounds") {
    for (int n = 1; n <= 64; ++n) {
      tasks.push_back([=] {
        const auto [lo, hi] = cayley_besov_bounds(n);
        const double v = besov_norm(cayley(n), cfg).value;
        const std::string name = "cayley n=" + std::to_string(n);
        return std::vector<Check>{le(suite, name + " lower <= numeric", lo, v), le(suite, name + " numeric <= upper", v, hi)};
      });
    }
    for (double t : {1.0, 10.0, 100.0}) {
      tasks.push_back([=] {
        const auto [lo, hi] = regexp_besov_bounds(t);
        const double v = regexp_besov_numeric(t, cfg).value;
        const std::string name = "regexp t=" + fmt(t);
        return std::vector<Check>{le(suite, name + " lower <= numeric", lo, v), le(suite, name + " numeric <= upper", v, hi)};
      });
    }
  } else if (suite == "slopes") {
    tasks.push_back([=] {
      std::vector<double> ns, v;
      for (int n = 8; n <= 256; n *= 2) {
        ns.push_back(n);
        v.push_back(cayley_hp(n, cfg).value - 1.0);
      }
      return std::vector<Check>{le(suite, "|slope of cayley_hp(n) - 1 over n in [8, 256] - 0.5|",
                                   std::abs(fitted_slope(ns, v) - 0.5), 0.05)};
    });
    tasks.push_back([=] {
      std::vector<double> ts, v;
      for (int k = 0; k <= 6; ++k) {
        ts.push_back(std::pow(10.0, 1.0 + 0.5 * k));
        v.push_back(exprecip_hp(ts.back(), cfg).value - 1.0);
      }
      return std::vector<Check>{le(suite, "|slope of exprecip_hp(t) - 1 over t in [10, 1e4] - 0.25|",
                                   std::abs(fitted_slope(ts, v) - 0.25), 0.05)};
    });
    tasks.push_back([=] {
      std::vector<double> ts, v;
      for (int k = 0; k <= 4; ++k) {
        ts.push_back(std::pow(10.0, 1.0 + 0.5 * k));
        v.push_back(regexp_hp(ts.back(), cfg).value);
      }
      return std::vector<Check>{le(suite, "|slope of regexp_hp(t) over t in [10, 1e3] - 1|",
                                   std::abs(fitted_slope(ts, v) - 1.0), 0.07)};
    });
  } else if (suite == "special") {
    tasks.push_back([=] {
      const double hp = cayley_hp(1, cfg).value;
      const double mu = hp_norm(RadonMeasure::dirac(0.0) - RadonMeasure::exp_poly(2.0, 0, 1.0), cfg).value;
      const double g = bessel_g_prime_l1(cfg).value;
      return std::vector<Check>{le(suite, "cayley_hp(1) = 3", std::abs(hp - 3.0), 1e-6),
                                le(suite, "hp(delta_0 - 2 e^-t dt) = 3", std::abs(mu - 3.0), 1e-6),
                                le(suite, "sqrt(1 + 4/pi^2) <= ||G'||_L1", std::sqrt(1.0 + 4.0 / (pi * pi)), g)};
    });
  }
  return tasks;
}

const std::map<std::string, std::vector<std::string>>& registry() {
  static const std::map<std::string, std::vector<std::string>> r{
      {"reproduce", {"first", "re", "im", "second", "poisson"}},
      {"pairing", {"grid", "analytic"}},
      {"calculus", {"oracle", "resolvent", "homomorphism", "bound", "spectral", "hp", "gamma"}},
      {"approx", {"kerror", "hest", "hstrip", "bc", "kernel", "ktriangle", "qtriangle"}},
      {"semigroup", {"evolve", "continuity", "gen2", "inversion", "decay", "holomorphy"}},
      {"families", {"exact", "bounds", "slopes", "special"}},
      {"property", {"scaling", "shift", "obstruction", "derivative", "convergence"}},
  };
  return r;
}

std::vector<Task> tasks_for(const std::string& group, const std::string& suite, const QuadratureConfig& cfg) {
  if (group == "reproduce") return reproduce_tasks(suite, cfg);
  if (group == "pairing") return pairing_tasks(suite, cfg);
  if (group == "calculus") return calculus_tasks(suite, cfg);
  if (group == "approx") return approx_tasks(suite, cfg);
  if (group == "semigroup") return semigroup_tasks(suite, cfg);
  if (group == "families") return family_tasks(suite, cfg);
  return property_tasks(suite, cfg);
}

}  // namespace

bool SuiteReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<std::string> suite_groups() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

std::vector<std::string> suite_names(const std::string& group) {
  const auto it = registry().find(group);
  if (it == registry().end()) throw std::invalid_argument("unknown verify group '" + group + "'");
  return it->second;
}

SuiteReport run_suite(const std::string& group, const std::string& suite, const QuadratureConfig& cfg,
                      unsigned threads) {
  const std::vector<std::string> names = suite_names(group);
  std::vector<std::string> selected;
  if (suite == "all") {
    selected = names;
  } else if (std::find(names.begin(), names.end(), suite) != names.end()) {
    selected = {suite};
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "' for " + group);
  }
  std::vector<Task> tasks;
  std::vector<std::string> owner;
  for (const std::string& s : selected) {
    for (Task& t : tasks_for(group, s, cfg)) {
      tasks.push_back(std::move(t));
      owner.push_back(s);
    }
  }
  std::vector<std::vector<Check>> results(tasks.size());
  parallel_for(tasks.size(), threads, [&](std::size_t i) {
    try {
      results[i] = tasks[i]();
    } catch (const Error& e) {
      results[i] = {Check{owner[i], std::string("error: ") + e.what(), INFINITY, 0.0, false}};
    }
  });
  SuiteReport rep;
  for (auto& r : results) {
    for (Check& c : r) rep.checks.push_back(std::move(c));
  }
  return rep;
}

}  // namespace besov::cli
