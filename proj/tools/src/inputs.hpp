#pragma once

#include <string>
#include <vector>

#include "besov/config.hpp"
#include "besov/types.hpp"

namespace besov::cli {

// Thrown for malformed configuration or arguments; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads a JSON object whose keys are QuadratureConfig fields. Unknown keys
// and ill-typed values are rejected. An empty path gives the defaults.
QuadratureConfig load_config(const std::string& path);
std::string config_schema();

// A JSON file holding an array of rows of [re, im] pairs (plain numbers are
// accepted as real entries), or one of the named forms
//   diag:1,2+i,3      jordan:n,lambda      random:seed,dim
Matrix load_matrix(const std::string& source);

// "1,10,100" lists values; "log:a:b:k" gives k log-spaced points on [a, b];
// "lin:a:b:k" k evenly spaced points.
std::vector<double> parse_grid(const std::string& text);

// Worker count from BESOV_THREADS, capped by the hardware concurrency.
unsigned thread_count();

}  // namespace besov::cli
