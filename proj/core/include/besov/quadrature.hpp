#pragma once

// Deterministic adaptive quadrature on intervals, lines and the half-line,
// templated on the value type (double, complex, Eigen vectors and matrices).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "besov/config.hpp"
#include "besov/types.hpp"

namespace besov::quad {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const cplx& x) { return std::abs(x); }
template <class Derived>
double magnitude(const Eigen::DenseBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.derived().cwiseAbs().maxCoeff());
}

struct Tolerance {
  double abs = 1e-8;
  double rel = 1e-5;
  double target(double scale) const { return std::max(abs, rel * scale); }
  Tolerance scaled(double factor) const { return {abs * factor, rel * factor}; }
};

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
  bool tail_divergent = false;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
T scaled_zero(const T& sample) {
  if constexpr (std::is_arithmetic_v<T> || std::is_same_v<T, cplx>) {
    return T{};
  } else {
    return T(sample * 0.0);
  }
}

}  // namespace detail

template <class T>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  T value{};
  double error = 0.0;
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b) {
  using namespace detail;
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T fv[15] = {};
  fv[7] = f(c);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * xgk[j];
    fv[j] = f(c - dx);
    fv[14 - j] = f(c + dx);
  }
  T resk = fv[7] * wgk[7];
  T resg = fv[7] * wg[3];
  double resabs = magnitude(fv[7]) * wgk[7];
  for (int j = 0; j < 7; ++j) {
    const T pair = fv[j] + fv[14 - j];
    resk += pair * wgk[j];
    if (j % 2 == 1) resg += pair * wg[j / 2];
    resabs += wgk[j] * (magnitude(fv[j]) + magnitude(fv[14 - j]));
  }
  const T mean = resk * 0.5;
  double resasc = wgk[7] * magnitude(T(fv[7] - mean));
  for (int j = 0; j < 7; ++j) {
    resasc += wgk[j] * (magnitude(T(fv[j] - mean)) + magnitude(T(fv[14 - j] - mean)));
  }
  const double ah = std::abs(h);
  resasc *= ah;
  resabs *= ah;
  double err = magnitude(T((resk - resg) * h));
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(err, 50.0 * eps * resabs);
  }
  return {a, b, T(resk * h), err};
}

// Globally adaptive Gauss-Kronrod integration over [breaks.front(), breaks.back()]
// with the given initial breakpoints.
template <class T, class F>
Result<T> integrate(F&& f, const std::vector<double>& breaks, Tolerance tol, Budget& budget,
                    std::size_t max_panels = 4000) {
  Result<T> out;
  if (breaks.size() < 2) return out;
  std::vector<Panel<T>> heap;
  std::vector<Panel<T>> frozen;
  heap.reserve(breaks.size() + 64);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    heap.push_back(gk15<T>(f, breaks[i], breaks[i + 1]));
  }
  budget.charge(15 * heap.size());
  out.evaluations = 15 * heap.size();
  if (heap.empty()) return out;
  auto less = [](const Panel<T>& x, const Panel<T>& y) { return x.error < y.error; };
  std::make_heap(heap.begin(), heap.end(), less);
  T total = detail::scaled_zero(heap.front().value);
  double err = 0.0;
  for (const auto& p : heap) {
    total += p.value;
    err += p.error;
  }
  while (err > tol.target(magnitude(total))) {
    if (heap.empty()) break;
    if (heap.size() + frozen.size() >= max_panels) {
      out.converged = false;
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), less);
    Panel<T> worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 1e-13 * (std::abs(worst.a) + std::abs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    Panel<T> left = gk15<T>(f, worst.a, mid);
    Panel<T> right = gk15<T>(f, mid, worst.b);
    budget.charge(30);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push_back(std::move(left));
    std::push_heap(heap.begin(), heap.end(), less);
    heap.push_back(std::move(right));
    std::push_heap(heap.begin(), heap.end(), less);
  }
  // Re-sum in left-to-right order so the result does not depend on the
  // refinement history.
  heap.insert(heap.end(), frozen.begin(), frozen.end());
  std::sort(heap.begin(), heap.end(),
            [](const Panel<T>& x, const Panel<T>& y) { return x.a < y.a; });
  T sum = detail::scaled_zero(heap.front().value);
  double esum = 0.0;
  for (const auto& p : heap) {
    sum += p.value;
    esum += p.error;
  }
  out.value = sum;
  out.error = esum;
  if (esum > tol.target(magnitude(sum))) out.converged = false;
  return out;
}

template <class T, class F>
Result<T> integrate(F&& f, double a, double b, Tolerance tol, Budget& budget,
                    std::size_t max_panels = 4000) {
  return integrate<T>(std::forward<F>(f), std::vector<double>{a, b}, tol, budget, max_panels);
}

// Description of an integrand along a vertical line, used to place initial
// breakpoints and to choose the tail strategy.
struct LineLayout {
  std::vector<double> centers{0.0};  // locations of peaks or singular behaviour
  double scale = 1.0;                // smallest feature width
  double wide = 1.0;                 // largest feature width
  double window = 16.0;              // core half-width beyond the outermost centre
  double growth = 4.0;               // geometric growth of non-oscillatory tail pieces
  double frequency = 0.0;            // tail oscillation e^{i w beta}; 0 none, < 0 unknown
  int max_tail_steps = 48;
};

std::vector<double> line_breaks(const LineLayout& layout, double& lo, double& hi);

// Euler-type acceleration by repeated averaging of partial sums.
template <class T>
T averaged_limit(const std::vector<T>& partial, int depth) {
  std::vector<T> level(partial.end() - std::min<std::ptrdiff_t>(depth + 1, partial.size()),
                       partial.end());
  while (level.size() > 1) {
    for (std::size_t i = 0; i + 1 < level.size(); ++i) level[i] = (level[i] + level[i + 1]) * 0.5;
    level.pop_back();
  }
  return level.front();
}

template <class T, class F>
Result<T> integrate_line(F&& f, const LineLayout& layout, Tolerance tol, Budget& budget) {
  double lo = 0.0;
  double hi = 0.0;
  const std::vector<double> breaks = line_breaks(layout, lo, hi);
  Result<T> core = integrate<T>(f, breaks, tol.scaled(0.25), budget);
  Result<T> out = core;
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  if (layout.frequency > 0.0) {
    // Half-period pieces alternate in sign; sum them and accelerate.
    const double step = pi / layout.frequency;
    std::vector<T> partial;
    std::vector<double> piece_size;
    T running = detail::scaled_zero(core.value);
    T previous_estimate = running;
    int stable = 0;
    bool done = false;
    for (int k = 0; k < 4 * layout.max_tail_steps; ++k) {
      const double r0 = hi + k * step;
      const double l0 = lo - k * step;
      const Tolerance piece_tol = tol.scaled(0.01);
      Result<T> right = integrate<T>(f, r0, r0 + step, piece_tol, budget, 64);
      Result<T> left = integrate<T>(f, l0 - step, l0, piece_tol, budget, 64);
      out.evaluations += right.evaluations + left.evaluations;
      const T piece = right.value + left.value;
      running += piece;
      partial.push_back(running);
      piece_size.push_back(std::max(magnitude(right.value), magnitude(left.value)));
      if (partial.size() < 6) continue;
      const T estimate = averaged_limit(partial, 10);
      const double change = magnitude(T(estimate - previous_estimate));
      previous_estimate = estimate;
      const double target = tol.target(magnitude(T(core.value + estimate))) * 0.25;
      stable = change < target ? stable + 1 : 0;
      if (stable >= 3) {
        const std::size_t n = piece_size.size();
        // The amplitude must actually decay, otherwise the averaged value is
        // only an Abel-type regularisation of a divergent integral.
        const double near = hi - mid + (n / 2) * step;
        const double far = hi - mid + (n - 1) * step;
        if (piece_size[n - 1] > 1e-3 * target && far > 1.2 * near && piece_size[n / 2] > 0.0) {
          const double power = std::log(piece_size[n / 2] / std::max(piece_size[n - 1], 1e-300)) /
                               std::log(far / near);
          if (power < 0.3) out.tail_divergent = true;
        }
        out.value = core.value + estimate;
        out.error = core.error + change;
        done = true;
        break;
      }
    }
    if (!done) {
      out.value = core.value + previous_estimate;
      out.error = core.error + magnitude(partial.back()) * 1e-3;
      out.converged = false;
    }
    return out;
  }

  T tail = detail::scaled_zero(core.value);
  double inner = half;
  double prev_size = -1.0;
  T prev_piece = tail;
  double prev_ratio = -1.0;
  int slow = 0;
  bool done = false;
  for (int k = 0; k < layout.max_tail_steps; ++k) {
    const double outer = inner * layout.growth;
    const Tolerance piece_tol = tol.scaled(0.05);
    Result<T> right = integrate<T>(f, mid + inner, mid + outer, piece_tol, budget, 400);
    Result<T> left = integrate<T>(f, mid - outer, mid - inner, piece_tol, budget, 400);
    out.evaluations += right.evaluations + left.evaluations;
    if (!right.converged || !left.converged) out.converged = false;
    const T piece = right.value + left.value;
    tail += piece;
    out.error += right.error + left.error;
    inner = outer;
    const double size = magnitude(piece);
    const double target = tol.target(magnitude(T(core.value + tail))) * 0.25;
    if (size < 1e-3 * target || size <= 1e-15 * magnitude(T(core.value + tail))) {
      done = true;
      break;
    }
    if (prev_size > 0.0) {
      const double ratio = size / prev_size;
      const double aligned = magnitude(T(piece - prev_piece * ratio)) <= 0.2 * size;
      if (ratio >= 0.97) {
        if (++slow >= 3) {
          out.tail_divergent = true;
          break;
        }
      } else {
        slow = 0;
      }
      if (aligned && ratio < 0.9 && prev_ratio > 0.0 && std::abs(ratio - prev_ratio) < 0.1) {
        const T extra = piece * (ratio / (1.0 - ratio));
        const double extra_size = magnitude(extra);
        if (extra_size < target) {
          tail += extra;
          out.error += 0.1 * extra_size + std::abs(ratio - prev_ratio) * extra_size;
          done = true;
          break;
        }
      }
      prev_ratio = ratio;
    }
    prev_size = size;
    prev_piece = piece;
  }
  if (!done) out.converged = false;
  out.value = core.value + tail;
  out.error += core.error;
  return out;
}

// Integral over alpha in (0, inf) of g(alpha), computed in u = log(alpha) on
// [u0, u1] and completed by power-law extrapolation of both ends.
// The tails can be switched off to integrate over [e^u0, inf), (0, e^u1] or
// [e^u0, e^u1]; extra_breaks are additional breakpoints in u.
template <class T, class G>
Result<T> integrate_alpha(G&& g, double u0, double u1, int panels, Tolerance tol, Budget& budget,
                          bool lower_tail = true, bool upper_tail = true,
                          const std::vector<double>& extra_breaks = {}) {
  auto F = [&](double u) -> T {
    const double a = std::exp(u);
    return T(g(a) * a);
  };
  std::vector<double> breaks;
  panels = std::max(panels, 2);
  for (int i = 0; i <= panels; ++i) breaks.push_back(u0 + (u1 - u0) * i / panels);
  for (double b : extra_breaks) {
    if (b > u0 && b < u1) breaks.push_back(b);
  }
  std::sort(breaks.begin(), breaks.end());
  Result<T> out = integrate<T>(F, breaks, tol.scaled(0.5), budget);
  if (!lower_tail && !upper_tail) return out;
  // Local exponents from three samples near each end.
  const double du = 0.5;
  const T f0 = F(u0), f1 = F(u0 + du), f2 = F(u0 + 2 * du);
  const T h0 = F(u1), h1 = F(u1 - du), h2 = F(u1 - 2 * du);
  budget.charge(6);
  out.evaluations += 6;
  auto slope = [du](const T& a, const T& b) {
    const double ma = magnitude(a), mb = magnitude(b);
    if (ma == 0.0 || mb == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return std::log(mb / ma) / du;
  };
  auto tail_term = [&](const T& edge, double q, double q_next, bool lower) -> T {
    if (magnitude(edge) == 0.0 || std::isnan(q)) return detail::scaled_zero(edge);
    const double rate = lower ? q : -q;
    if (!(rate > 0.05)) {
      out.tail_divergent = true;
      return detail::scaled_zero(edge);
    }
    const T t = edge * (1.0 / rate);
    const double drift = std::abs(q - q_next);
    out.error += magnitude(t) * std::min(1.0, drift / rate);
    return t;
  };
  const T lower = lower_tail ? tail_term(f0, slope(f0, f1), slope(f1, f2), true)
                             : detail::scaled_zero(f0);
  const T upper = upper_tail ? tail_term(h0, -slope(h0, h1), -slope(h1, h2), false)
                             : detail::scaled_zero(h0);
  out.value += lower + upper;
  if (out.error > tol.target(magnitude(out.value))) out.converged = false;
  return out;
}

struct SupResult {
  double value = 0.0;
  double location = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

struct SupPolicy {
  int samples_per_efold = 12;
  int refine_rounds = 4;
  double rel_tol = 1e-5;
  int max_rounds = 14;
};

// Supremum of a non-negative function of beta on the real line: geometric
// sampling around the layout centres, window growth while the outer ring
// keeps raising the maximum, and golden-section refinement of the top local
// maxima.
template <class H>
SupResult sup_on_line(H&& h, const LineLayout& layout, const SupPolicy& policy, Budget& budget) {
  SupResult out;
  std::vector<std::pair<double, double>> samples;
  const double q = std::exp(1.0 / policy.samples_per_efold);
  const double d0 = 1e-3 * layout.scale;
  const double span = layout.centers.empty()
                          ? 0.0
                          : *std::max_element(layout.centers.begin(), layout.centers.end()) -
                                *std::min_element(layout.centers.begin(), layout.centers.end());
  double reach = std::max(layout.window, 4.0 * layout.wide) + span;
  auto sample = [&](double beta) {
    const double v = h(beta);
    samples.emplace_back(beta, v);
    return v;
  };
  double best = 0.0;
  for (double c : layout.centers) best = std::max(best, sample(c));
  auto ring = [&](double from, double to) {
    double m = 0.0;
    for (double c : layout.centers) {
      for (double d = std::max(d0, from); d <= to; d *= q) {
        if (d < from) continue;
        m = std::max(m, sample(c + d));
        m = std::max(m, sample(c - d));
      }
    }
    return m;
  };
  best = std::max(best, ring(d0, reach));
  bool settled = false;
  for (int round = 0; round < policy.max_rounds; ++round) {
    const double next = reach * layout.growth;
    const double outer = ring(reach * q, next);
    reach = next;
    if (outer <= best * (1.0 + 0.1 * policy.rel_tol)) {
      settled = true;
      break;
    }
    best = outer;
  }
  if (!settled) out.converged = false;
  budget.charge(samples.size());

  std::sort(samples.begin(), samples.end());
  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double v = samples[i].second;
    const bool left_ok = i == 0 || samples[i - 1].second <= v;
    const bool right_ok = i + 1 == samples.size() || samples[i + 1].second <= v;
    if (left_ok && right_ok) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) {
    return samples[a].second > samples[b].second;
  });
  double best_value = samples.empty() ? 0.0 : samples[peaks.empty() ? 0 : peaks.front()].second;
  double best_location = samples.empty() ? 0.0 : samples[peaks.empty() ? 0 : peaks.front()].first;
  std::size_t extra = 0;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (std::size_t r = 0; r < peaks.size() && static_cast<int>(r) < policy.refine_rounds; ++r) {
    const std::size_t i = peaks[r];
    if (i == 0 || i + 1 == samples.size()) continue;
    double a = samples[i - 1].first;
    double b = samples[i + 1].first;
    double x1 = b - g * (b - a);
    double x2 = a + g * (b - a);
    double f1 = h(x1), f2 = h(x2);
    extra += 2;
    for (int it = 0; it < 80 && (b - a) > 1e-11 * (1.0 + std::abs(a)); ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = h(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = h(x1);
      }
      ++extra;
    }
    const double v = std::max(f1, f2);
    if (v > best_value) {
      best_value = v;
      best_location = f1 > f2 ? x1 : x2;
    }
  }
  budget.charge(extra);
  out.value = best_value;
  out.location = best_location;
  out.evaluations = samples.size() + extra;
  return out;
}

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace besov::quad
