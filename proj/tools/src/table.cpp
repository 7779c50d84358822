#include "table.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include <json.hpp>

namespace besov::cli {

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return format_double(v);
        else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else return csv_field(v);
      },
      c);
}

bool numeric(const Cell& c, double& out) {
  if (const double* d = std::get_if<double>(&c)) {
    out = *d;
    return std::isfinite(out);
  }
  if (const long long* i = std::get_if<long long>(&c)) {
    out = static_cast<double>(*i);
    return true;
  }
  return false;
}

std::string svg_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << csv_field(t.columns[k]);
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << cell_text(row[k]);
    os << "\n";
  }
}

void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t k = 0; k < row.size() && k < t.columns.size(); ++k) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              if (std::isfinite(v)) obj[t.columns[k]] = v;
              else obj[t.columns[k]] = nullptr;
            } else {
              obj[t.columns[k]] = v;
            }
          },
          row[k]);
    }
    rows.push_back(std::move(obj));
  }
  os << rows.dump(2) << "\n";
}

void write_svg(std::ostream& os, const Table& t, const PlotSpec& spec) {
  const auto col = [&](const std::string& name) {
    const auto it = std::find(t.columns.begin(), t.columns.end(), name);
    return it == t.columns.end() ? std::size_t(-1) : static_cast<std::size_t>(it - t.columns.begin());
  };
  const std::size_t cx = col(spec.x_column);
  const std::size_t cy = col(spec.y_column);
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : t.rows) {
    double x = 0.0, y = 0.0;
    if (cx >= row.size() || cy >= row.size() || !numeric(row[cx], x) || !numeric(row[cy], y)) continue;
    if ((spec.log_x && x <= 0.0) || (spec.log_y && y <= 0.0)) continue;
    pts.emplace_back(spec.log_x ? std::log10(x) : x, spec.log_y ? std::log10(y) : y);
  }
  const double w = 640, h = 400, m = 60;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!pts.empty()) {
    x0 = x1 = pts[0].first;
    y0 = y1 = pts[0].second;
    for (const auto& [x, y] : pts) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
  }
  const auto px = [&](double x) { return m + (x - x0) / (x1 - x0) * (w - 2 * m); };
  const auto py = [&](double y) { return h - m - (y - y0) / (y1 - y0) * (h - 2 * m); };
  const auto label = [](double v, bool log) { return format_double(log ? std::pow(10.0, v) : v); };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << svg_escape(spec.title)
     << "</text>\n";
  os << "<line x1=\"" << m << "\" y1=\"" << h - m << "\" x2=\"" << w - m << "\" y2=\"" << h - m
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << m << "\" y1=\"" << m << "\" x2=\"" << m << "\" y2=\"" << h - m << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << m << "\" y=\"" << h - m + 18 << "\" font-size=\"10\">" << label(x0, spec.log_x) << "</text>\n";
  os << "<text x=\"" << w - m << "\" y=\"" << h - m + 18 << "\" font-size=\"10\" text-anchor=\"end\">"
     << label(x1, spec.log_x) << "</text>\n";
  os << "<text x=\"" << m - 4 << "\" y=\"" << h - m << "\" font-size=\"10\" text-anchor=\"end\">"
     << label(y0, spec.log_y) << "</text>\n";
  os << "<text x=\"" << m - 4 << "\" y=\"" << m + 4 << "\" font-size=\"10\" text-anchor=\"end\">"
     << label(y1, spec.log_y) << "</text>\n";
  os << "<text x=\"" << w / 2 << "\" y=\"" << h - 16 << "\" text-anchor=\"middle\" font-size=\"12\">"
     << svg_escape(spec.x_column) << (spec.log_x ? " (log)" : "") << "</text>\n";
  os << "<text x=\"16\" y=\"" << h / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
     << h / 2 << ")\">" << svg_escape(spec.y_column) << (spec.log_y ? " (log)" : "") << "</text>\n";
  os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    os << (k ? " " : "") << format_double(px(pts[k].first)) << "," << format_double(py(pts[k].second));
  }
  os << "\"/>\n</svg>\n";
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < count; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace besov::cli
