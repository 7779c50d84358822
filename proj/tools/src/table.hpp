#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace besov::cli {

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

// Header row, '.' decimal, 17 significant digits.
void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);

struct PlotSpec {
  std::string x_column;
  std::string y_column;
  bool log_x = false;
  bool log_y = false;
  std::string title;
};

// Single-series SVG line chart; non-positive values are skipped on log axes.
void write_svg(std::ostream& os, const Table& t, const PlotSpec& spec);

// Runs body(i) for i in [0, n) on at most `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace besov::cli
