// One PASS/FAIL line per acceptance criterion; failing checks are listed on
// stderr. Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "inputs.hpp"
#include "suites.hpp"

namespace {

using besov::cli::Check;
using besov::cli::run_suite;

struct Criterion {
  int id;
  std::string title;
  std::vector<std::pair<std::string, std::string>> suites;  // (group, suite)
  double time_limit;  // seconds, 0 for none
};

// Calculus gamma suite holds the scalar [0] estimate; scaling and
// obstruction come from the property group.
const std::vector<Criterion> criteria{
    {1, "exact B-norms of g_t and f_n", {{"families", "exact"}}, 60.0},
    {2, "two-sided bounds and HP growth slopes", {{"families", "bounds"}, {"families", "slopes"}}, 600.0},
    {3, "reproducing formulas, 4 variants x 7 families x 20 points",
     {{"reproduce", "first"}, {"reproduce", "re"}, {"reproduce", "im"}, {"reproduce", "second"}}, 0.0},
    {4, "green pairing = boundary pairing", {{"pairing", "grid"}, {"pairing", "analytic"}}, 0.0},
    {5, "functional calculus",
     {{"calculus", "oracle"}, {"calculus", "homomorphism"}, {"calculus", "resolvent"}, {"calculus", "bound"},
      {"calculus", "spectral"}},
     0.0},
    {6, "approximation inequalities and convergence",
     {{"approx", "kerror"}, {"approx", "hest"}, {"approx", "hstrip"}, {"approx", "bc"}, {"approx", "ktriangle"},
      {"approx", "qtriangle"}},
     0.0},
    {7, "semigroup dynamics", {{"semigroup", "gen2"}, {"semigroup", "inversion"}, {"semigroup", "decay"}}, 0.0},
    {8, "scaling isometry, approximate-identity obstruction, gamma of [0]",
     {{"property", "scaling"}, {"property", "obstruction"}, {"calculus", "gamma"}},
     0.0},
};

}  // namespace

int main() {
  const besov::QuadratureConfig cfg;
  const unsigned threads = besov::cli::thread_count();
  bool all = true;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::size_t total = 0, failed = 0;
    for (const auto& [group, suite] : c.suites) {
      for (const Check& k : run_suite(group, suite, cfg, threads).checks) {
        ++total;
        if (!k.pass) {
          ++failed;
          std::cerr << "  criterion " << c.id << " failed: " << group << "/" << k.suite << " " << k.name
                    << " value=" << k.value << " bound=" << k.bound << "\n";
        }
      }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit <= 0.0 || seconds < c.time_limit;
    const bool pass = total > 0 && failed == 0 && in_time;
    all = all && pass;
    char line[256];
    std::snprintf(line, sizeof line, "%s criterion %d: %s (%zu checks, %zu failed, %.1f s%s)", pass ? "PASS" : "FAIL",
                  c.id, c.title.c_str(), total, failed, seconds, in_time ? "" : ", over time limit");
    std::cout << line << std::endl;
  }
  return all ? 0 : 1;
}
