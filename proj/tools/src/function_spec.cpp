#include "function_spec.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "besov/error.hpp"
#include "besov/special.hpp"

namespace besov::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) fail("empty number");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    fail("bad number '" + t + "'");
  }
  if (used != t.size()) fail("bad number '" + t + "'");
  return v;
}

// Splits "a, b(c, d), e" at top-level commas.
std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth < 0) fail("unbalanced parentheses in '" + s + "'");
    if (s[i] == ',' && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) fail("unbalanced parentheses in '" + s + "'");
  out.push_back(trim(s.substr(start)));
  return out;
}

const char* family_key(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Cayley: return "n";
    case FamilyKind::ExpReciprocal:
    case FamilyKind::RegularizedExp: return "t";
    case FamilyKind::Exponential:
    case FamilyKind::Resolvent:
    case FamilyKind::ResolventSquare: return "a";
    case FamilyKind::Constant: return "c";
  }
  return "?";
}

std::string format_number(cplx c) {
  std::ostringstream os;
  os.precision(17);
  os << c.real();
  if (c.imag() != 0.0) os << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
  return os.str();
}

// Bound on int_T^inf 2 e^{-t} |L_{n-1}^{(1)}(2t)| dt from the coefficient-wise
// majorant sum_j C(n, j+1) (2t)^j / j!.
double cayley_tail(int n, double T) {
  double total = 0.0;
  const double log_t = std::log(T);
  for (int j = 0; j < n; ++j) {
    const double log_c = std::lgamma(n + 1.0) - std::lgamma(j + 2.0) - std::lgamma(n - j + 0.0) +
                         j * std::log(2.0) - T;
    for (int i = 0; i <= j; ++i) total += std::exp(log_c + i * log_t - std::lgamma(i + 1.0));
  }
  return 2.0 * total;
}

RadonMeasure cayley_measure(int n) {
  double cutoff = 10.0 * n + 40.0;
  while (cayley_tail(n, cutoff) > 1e-13) cutoff *= 1.5;
  CallableDensity d;
  d.g = [n](double t) { return cplx(-2.0 * laguerre_scaled(n - 1, 2.0 * t), 0.0); };
  d.cutoff = cutoff;
  d.tail_bound = cayley_tail(n, cutoff);
  for (double r : laguerre_roots(n - 1)) d.breaks.push_back(0.5 * r);
  return RadonMeasure::dirac(0.0) + RadonMeasure::callable(std::move(d));
}

// e^{-t/(z+1)} = 1 - int_0^inf sqrt(t/s) J_1(2 sqrt(ts)) e^{-s} e^{-zs} ds.
RadonMeasure exprecip_measure(double t) {
  double cutoff = 40.0;
  while (t * std::exp(-cutoff) > 1e-14) cutoff += 10.0;
  CallableDensity d;
  d.g = [t](double s) {
    if (s <= 0.0) return cplx(-t, 0.0);
    return cplx(-std::sqrt(t / s) * bessel_j(1, 2.0 * std::sqrt(t * s)) * std::exp(-s), 0.0);
  };
  d.cutoff = cutoff;
  d.tail_bound = t * std::exp(-cutoff);
  for (double r : bessel_zeros(1, 2.0 * std::sqrt(t * cutoff))) d.breaks.push_back(r * r / (4.0 * t));
  return RadonMeasure::dirac(0.0) + RadonMeasure::callable(std::move(d));
}

// e^{-a t} d mu(t), the measure of f(z + a).
RadonMeasure tilt(const RadonMeasure& mu, cplx a) {
  RadonMeasure out;
  for (const Atom& x : mu.atoms()) out += RadonMeasure::dirac(x.location, x.weight * std::exp(-a * x.location));
  for (const ExpPolyPiece& p : mu.pieces()) {
    out += RadonMeasure::exp_poly(p.coeff * std::exp(-a * p.shift), p.power, p.rate + a, p.shift);
  }
  for (GridDensity g : mu.grids()) {
    for (std::size_t k = 0; k < g.values.size(); ++k) g.values[k] *= std::exp(-a * (g.t0 + g.step * k));
    out += RadonMeasure::grid(std::move(g));
  }
  for (CallableDensity c : mu.callables()) {
    auto inner = c.g;
    c.g = [inner, a](double t) { return inner(t) * std::exp(-a * t); };
    out += RadonMeasure::callable(std::move(c));
  }
  return out;
}

// Image of mu under t -> b t, the measure of f(b z).
RadonMeasure dilate(const RadonMeasure& mu, double b) {
  RadonMeasure out;
  for (const Atom& x : mu.atoms()) out += RadonMeasure::dirac(b * x.location, x.weight);
  for (const ExpPolyPiece& p : mu.pieces()) {
    out += RadonMeasure::exp_poly(p.coeff * std::pow(b, -p.power - 1.0), p.power, p.rate / b, b * p.shift);
  }
  for (GridDensity g : mu.grids()) {
    g.t0 *= b;
    g.step *= b;
    for (cplx& v : g.values) v /= b;
    out += RadonMeasure::grid(std::move(g));
  }
  for (CallableDensity c : mu.callables()) {
    auto inner = c.g;
    c.g = [inner, b](double t) { return inner(t / b) / b; };
    c.cutoff *= b;
    for (double& x : c.breaks) x *= b;
    out += RadonMeasure::callable(std::move(c));
  }
  return out;
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) fail("empty number");
  if (t.back() != 'i') return {parse_real(t), 0.0};
  t.pop_back();
  // Split at the last sign that is neither leading nor an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : t.substr(0, split);
  std::string im = split == std::string::npos ? t : t.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re), parse_real(im)};
}

FunctionSpec parse_function_spec(const std::string& text) {
  const std::string t = trim(text);
  FunctionSpec out;
  const std::size_t paren = t.find('(');
  if (paren != std::string::npos) {
    if (t.back() != ')') fail("expected ')' at the end of '" + t + "'");
    const std::string head = trim(t.substr(0, paren));
    const std::vector<std::string> args = split_args(t.substr(paren + 1, t.size() - paren - 2));
    auto unary_with_number = [&](FunctionSpec::Op op) {
      if (args.size() != 2) fail(head + " takes a number and a spec");
      out.op = op;
      out.parameter = parse_complex(args[0]);
      out.args.push_back(parse_function_spec(args[1]));
    };
    if (head == "sum" || head == "product") {
      out.op = head == "sum" ? FunctionSpec::Op::Sum : FunctionSpec::Op::Product;
      for (const std::string& a : args) out.args.push_back(parse_function_spec(a));
      if (out.args.empty()) fail(head + " needs arguments");
    } else if (head == "shift") {
      unary_with_number(FunctionSpec::Op::Shift);
      if (out.parameter.real() < 0.0) fail("shift needs Re a >= 0");
    } else if (head == "rescale") {
      unary_with_number(FunctionSpec::Op::Rescale);
      if (out.parameter.imag() != 0.0 || !(out.parameter.real() > 0.0)) fail("rescale needs b > 0");
    } else if (head == "scale") {
      unary_with_number(FunctionSpec::Op::Scale);
    } else if (head == "deriv") {
      if (args.size() != 1) fail("deriv takes one spec");
      out.op = FunctionSpec::Op::Derivative;
      out.args.push_back(parse_function_spec(args[0]));
    } else {
      fail("unknown composition '" + head + "'");
    }
    return out;
  }
  const std::size_t colon = t.find(':');
  if (colon == std::string::npos) fail("function spec '" + t + "' needs the form family:key=value");
  out.family.kind = family_kind_from_string(trim(t.substr(0, colon)));
  const std::string rest = trim(t.substr(colon + 1));
  const std::size_t eq = rest.find('=');
  if (eq == std::string::npos) fail("expected key=value in '" + t + "'");
  const std::string key = trim(rest.substr(0, eq));
  if (key != family_key(out.family.kind)) {
    fail(std::string("family ") + to_string(out.family.kind) + " takes '" + family_key(out.family.kind) + "'");
  }
  out.family.parameter = parse_complex(rest.substr(eq + 1));
  out.function();  // validates the parameter
  return out;
}

HalfPlaneFunction FunctionSpec::function() const {
  switch (op) {
    case Op::Family: return family.function();
    case Op::Sum: {
      HalfPlaneFunction f = args[0].function();
      for (std::size_t k = 1; k < args.size(); ++k) f = f + args[k].function();
      return f;
    }
    case Op::Product: {
      HalfPlaneFunction f = args[0].function();
      for (std::size_t k = 1; k < args.size(); ++k) f = f * args[k].function();
      return f;
    }
    case Op::Shift: return shift(args[0].function(), parameter);
    case Op::Rescale: return rescale(args[0].function(), parameter.real());
    case Op::Scale: return parameter * args[0].function();
    case Op::Derivative: return derivative_function(args[0].function());
  }
  fail("bad spec");
}

std::optional<RadonMeasure> FunctionSpec::measure(const QuadratureConfig& cfg) const {
  switch (op) {
    case Op::Family: {
      const cplx p = family.parameter;
      switch (family.kind) {
        case FamilyKind::Cayley: return cayley_measure(static_cast<int>(p.real()));
        case FamilyKind::ExpReciprocal: return exprecip_measure(p.real());
        case FamilyKind::RegularizedExp: return std::nullopt;
        case FamilyKind::Exponential: return RadonMeasure::dirac(p.real());
        case FamilyKind::Resolvent: return RadonMeasure::exp_poly(1.0, 0, p);
        case FamilyKind::ResolventSquare: return RadonMeasure::exp_poly(1.0, 1, p);
        case FamilyKind::Constant: return RadonMeasure::dirac(0.0, p);
      }
      return std::nullopt;
    }
    case Op::Sum:
    case Op::Product: {
      std::optional<RadonMeasure> mu = args[0].measure(cfg);
      for (std::size_t k = 1; mu && k < args.size(); ++k) {
        std::optional<RadonMeasure> nu = args[k].measure(cfg);
        if (!nu) return std::nullopt;
        mu = op == Op::Sum ? *mu + *nu : convolve(*mu, *nu, cfg);
      }
      return mu;
    }
    case Op::Shift: {
      std::optional<RadonMeasure> mu = args[0].measure(cfg);
      if (!mu) return std::nullopt;
      return tilt(*mu, parameter);
    }
    case Op::Rescale: {
      std::optional<RadonMeasure> mu = args[0].measure(cfg);
      if (!mu) return std::nullopt;
      return dilate(*mu, parameter.real());
    }
    case Op::Scale: {
      std::optional<RadonMeasure> mu = args[0].measure(cfg);
      if (!mu) return std::nullopt;
      return parameter * *mu;
    }
    case Op::Derivative: return std::nullopt;
  }
  return std::nullopt;
}

std::string FunctionSpec::text() const {
  auto join = [&](const char* head) {
    std::string s = std::string(head) + "(";
    for (std::size_t k = 0; k < args.size(); ++k) s += (k ? "," : "") + args[k].text();
    return s + ")";
  };
  switch (op) {
    case Op::Family:
      return std::string(to_string(family.kind)) + ":" + family_key(family.kind) + "=" +
             format_number(family.parameter);
    case Op::Sum: return join("sum");
    case Op::Product: return join("product");
    case Op::Shift: return "shift(" + format_number(parameter) + "," + args[0].text() + ")";
    case Op::Rescale: return "rescale(" + format_number(parameter) + "," + args[0].text() + ")";
    case Op::Scale: return "scale(" + format_number(parameter) + "," + args[0].text() + ")";
    case Op::Derivative: return join("deriv");
  }
  return "?";
}

}  // namespace besov::cli
