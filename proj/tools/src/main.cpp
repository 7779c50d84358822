#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "besov/dynamics.hpp"
#include "besov/error.hpp"
#include "besov/families.hpp"
#include "besov/measures.hpp"
#include "besov/norms.hpp"
#include "besov/operator.hpp"
#include "function_spec.hpp"
#include "inputs.hpp"
#include "suites.hpp"
#include "table.hpp"

namespace {

using namespace besov;
using namespace besov::cli;

struct OutputOptions {
  std::string config;
  std::string format = "csv";
  std::string out;
  std::string plot;
  std::string plot_x;
  std::string plot_y;
  bool log_axes = false;
};

void emit(const Table& t, const OutputOptions& o, const std::string& title, const std::string& x,
          const std::string& y) {
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw ConfigError("cannot write '" + o.out + "'");
  }
  std::ostream& os = o.out.empty() ? std::cout : file;
  if (o.format == "json") write_json(os, t);
  else write_csv(os, t);
  if (!o.plot.empty()) {
    std::ofstream svg(o.plot);
    if (!svg) throw ConfigError("cannot write '" + o.plot + "'");
    PlotSpec spec{o.plot_x.empty() ? x : o.plot_x, o.plot_y.empty() ? y : o.plot_y, o.log_axes, o.log_axes, title};
    write_svg(svg, t, spec);
  }
}

Table norm_command(const std::string& kind, const FunctionSpec& spec, const QuadratureConfig& cfg) {
  const HalfPlaneFunction f = spec.function();
  NormReport r;
  if (kind == "besov") r = besov_norm(f, cfg);
  else if (kind == "seminorm") r = besov_seminorm(f, cfg);
  else if (kind == "sup") r = sup_norm(f, cfg);
  else if (kind == "e") r = e_seminorm(f, cfg);
  else if (kind == "h1") r = h1_norm(f, cfg);
  else if (kind == "w") {
    PlaneFunction g;
    g.value = [f](double a, double b) { return f(cplx(a, b)); };
    g.centers = f.centers();
    g.scales = f.scales();
    g.frequency = f.frequency();
    r = w_norm(g, cfg);
  } else if (kind == "hp") {
    const cplx p = spec.family.parameter;
    const bool single = spec.op == FunctionSpec::Op::Family;
    if (single && spec.family.kind == FamilyKind::Cayley) r = cayley_hp(static_cast<int>(p.real()), cfg);
    else if (single && spec.family.kind == FamilyKind::ExpReciprocal) r = exprecip_hp(p.real(), cfg);
    else if (single && spec.family.kind == FamilyKind::RegularizedExp) r = regexp_hp(p.real(), cfg);
    else {
      const std::optional<RadonMeasure> mu = spec.measure(cfg);
      if (!mu) throw ConfigError("no measure representation for '" + spec.text() + "'");
      r = hp_norm(*mu, cfg);
    }
  } else {
    throw ConfigError("unknown norm '" + kind + "'");
  }
  Table t;
  t.columns = {"norm", "function", "value", "tail_bound", "converged", "evaluations"};
  t.add({kind, spec.text(), r.value, r.tail_bound, r.converged, static_cast<long long>(r.evaluations)});
  return t;
}

Table table_command(const std::string& family, int nmax, const std::string& tgrid, const QuadratureConfig& cfg) {
  FamilyKind kind;
  std::vector<double> params;
  if (family == "cayley") {
    kind = FamilyKind::Cayley;
    if (nmax < 1) throw ConfigError("table cayley needs --nmax >= 1");
    for (int n = 1; n <= nmax; ++n) params.push_back(n);
  } else if (family == "exprecip" || family == "regexp") {
    kind = family == "exprecip" ? FamilyKind::ExpReciprocal : FamilyKind::RegularizedExp;
    if (tgrid.empty()) throw ConfigError("table " + family + " needs --tgrid");
    params = parse_grid(tgrid);
    for (double t : params) {
      if (!(t > 0.0)) throw ConfigError("--tgrid values must be positive");
    }
  } else {
    throw ConfigError("unknown table family '" + family + "'");
  }
  std::vector<GapRow> rows(params.size());
  parallel_for(params.size(), thread_count(), [&](std::size_t i) { rows[i] = gap_table(kind, {params[i]}, cfg)[0]; });
  Table t;
  t.columns = {"param", "besov_exact_or_bounds", "besov_numeric", "hp_numeric", "ratio"};
  for (const GapRow& r : rows) {
    Cell exact = r.besov_exact;
    if (std::isnan(r.besov_exact)) {
      std::ostringstream os;
      os.precision(17);
      os << "[" << r.besov_lower << ", " << r.besov_upper << "]";
      exact = os.str();
    }
    t.add({r.parameter, exact, r.besov_numeric, r.hp, r.ratio});
  }
  return t;
}

Table verify_command(const std::string& group, const std::string& suite, const QuadratureConfig& cfg, bool& ok) {
  SuiteReport rep;
  try {
    rep = run_suite(group, suite, cfg, thread_count());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  ok = rep.passed();
  Table t;
  t.columns = {"suite", "check", "value", "bound", "pass"};
  std::size_t failed = 0;
  for (const Check& c : rep.checks) {
    t.add({c.suite, c.name, c.value, c.bound, c.pass});
    if (!c.pass) ++failed;
  }
  std::cerr << group << "/" << suite << ": " << rep.checks.size() - failed << " of " << rep.checks.size()
            << " checks passed\n";
  return t;
}

Table calc_command(const FunctionSpec& spec, const std::string& matrix, const QuadratureConfig& cfg) {
  const MatrixOperator a(load_matrix(matrix));
  const CalcReport r = apply_calculus(spec.function(), a, cfg);
  Table t;
  t.columns = {"row", "col", "re", "im", "error", "converged", "evaluations"};
  for (Eigen::Index i = 0; i < r.value.rows(); ++i) {
    for (Eigen::Index j = 0; j < r.value.cols(); ++j) {
      t.add({static_cast<long long>(i), static_cast<long long>(j), r.value(i, j).real(), r.value(i, j).imag(),
             r.error, r.converged, static_cast<long long>(r.evaluations)});
    }
  }
  return t;
}

Table evolve_command(const FunctionSpec& spec, const std::string& matrix, const std::string& tgrid,
                     const QuadratureConfig& cfg) {
  const MatrixOperator a(load_matrix(matrix));
  const HalfPlaneFunction f = spec.function();
  const std::vector<double> ts = parse_grid(tgrid);
  for (double t : ts) {
    if (!(t >= 0.0)) throw ConfigError("--tgrid values must be non-negative");
  }
  std::vector<Matrix> values(ts.size());
  parallel_for(ts.size(), thread_count(), [&](std::size_t i) { values[i] = evolve(f, a, ts[i], cfg); });
  Table t;
  t.columns = {"t", "norm", "trace_re", "trace_im", "jump"};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const cplx tr = values[i].trace();
    const double jump = i == 0 ? 0.0 : operator_norm(values[i] - values[i - 1]);
    t.add({ts[i], operator_norm(values[i]), tr.real(), tr.imag(), jump});
  }
  return t;
}

Table invert_command(const std::string& matrix, double t, double sigma, const std::string& ngrid,
                     const QuadratureConfig& cfg) {
  if (!(t > 0.0) || !(sigma > 0.0)) throw ConfigError("invert needs --t > 0 and --sigma > 0");
  const MatrixOperator a(load_matrix(matrix));
  const std::vector<double> ns = parse_grid(ngrid);
  const InversionReport r = semigroup_inversion(a, t, sigma, ns, cfg);
  const Matrix expm = matrix_exponential(-t * a.matrix());
  const double squared = operator_norm(r.squared - expm);
  const double limit = operator_norm(r.first.limit - expm);
  Table out;
  out.columns = {"N", "raw_error", "cesaro_error", "squared_error", "limit_error", "slope"};
  for (std::size_t i = 0; i < r.first.n.size(); ++i) {
    out.add({r.first.n[i], r.first.raw_error[i], r.first.cesaro_error[i], squared, limit, r.first.slope});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytic Besov functional calculus: norms, gap tables, verification suites and matrix dynamics"};
  app.require_subcommand(1);
  app.fallthrough();
  OutputOptions o;
  app.add_option("--config", o.config, "JSON quadrature config")->check(CLI::ExistingFile);
  app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", o.out, "write the table here instead of stdout");
  app.add_option("--plot", o.plot, "write an SVG line chart");
  app.add_option("--plot-x", o.plot_x, "column for the x axis");
  app.add_option("--plot-y", o.plot_y, "column for the y axis");
  app.add_flag("--log-axes", o.log_axes, "logarithmic plot axes");

  std::string function_text, matrix, tgrid, ngrid, kind, family, group, suite = "all";
  int nmax = 0;
  double t_value = 1.0, sigma = 1.0;

  CLI::App* norm = app.add_subcommand("norm", "one norm of a function");
  norm->add_option("kind", kind, "besov | seminorm | sup | hp | e | w | h1")
      ->required()
      ->check(CLI::IsMember({"besov", "seminorm", "sup", "hp", "e", "w", "h1"}));
  norm->add_option("--function", function_text, "function spec")->required();

  CLI::App* table = app.add_subcommand("table", "B-norm against HP-norm gap table");
  table->add_option("family", family, "cayley | exprecip | regexp")
      ->required()
      ->check(CLI::IsMember({"cayley", "exprecip", "regexp"}));
  table->add_option("--nmax", nmax, "cayley: rows n = 1..N");
  table->add_option("--tgrid", tgrid, "exprecip/regexp: parameter grid");

  CLI::App* verify = app.add_subcommand("verify", "run an invariant suite; exit 1 on failure");
  verify->add_option("group", group, "reproduce | pairing | approx | calculus | semigroup | families | property")
      ->required();
  verify->add_option("--suite", suite, "suite name or all");

  CLI::App* calc = app.add_subcommand("calc", "functional calculus on a matrix");
  CLI::App* apply = calc->add_subcommand("apply", "f(A) by the half-plane integral");
  calc->require_subcommand(1);
  apply->add_option("--function", function_text, "function spec")->required();
  apply->add_option("--matrix", matrix, "matrix file or diag:/jordan:/random: form")->required();

  CLI::App* evolve = app.add_subcommand("evolve", "f(tA) over a t grid");
  evolve->add_option("--function", function_text, "function spec")->required();
  evolve->add_option("--matrix", matrix, "matrix file or named form")->required();
  evolve->add_option("--tgrid", tgrid, "t grid")->required();

  CLI::App* invert = app.add_subcommand("invert", "complex inversion of exp(-tA)");
  invert->add_option("--matrix", matrix, "matrix file or named form")->required();
  invert->add_option("--t", t_value, "time t > 0")->required();
  invert->add_option("--sigma", sigma, "abscissa sigma > 0")->required();
  invert->add_option("--Ngrid", ngrid, "truncation grid")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const QuadratureConfig cfg = load_config(o.config);
    if (*norm) {
      emit(norm_command(kind, parse_function_spec(function_text), cfg), o, "norm", "value", "value");
    } else if (*table) {
      emit(table_command(family, nmax, tgrid, cfg), o, "table " + family, "param", "ratio");
    } else if (*verify) {
      bool ok = false;
      emit(verify_command(group, suite, cfg, ok), o, "verify " + group, "value", "value");
      return ok ? 0 : 1;
    } else if (*apply) {
      emit(calc_command(parse_function_spec(function_text), matrix, cfg), o, "f(A)", "col", "re");
    } else if (*evolve) {
      emit(evolve_command(parse_function_spec(function_text), matrix, tgrid, cfg), o, "||f(tA)||", "t", "norm");
    } else if (*invert) {
      emit(invert_command(matrix, t_value, sigma, ngrid, cfg), o, "inversion error", "N", "raw_error");
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidArgument ? 2 : 1;
  }
  return 0;
}
