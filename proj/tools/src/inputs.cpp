#include "inputs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "besov/error.hpp"
#include "besov/operator.hpp"
#include "function_spec.hpp"

namespace besov::cli {

namespace {

using json = nlohmann::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s) {
  try {
    const cplx c = parse_complex(s);
    if (c.imag() != 0.0) throw ConfigError("expected a real number, got '" + s + "'");
    return c.real();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

cplx to_complex(const std::string& s) {
  try {
    return parse_complex(s);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

cplx json_entry(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError("matrix entries must be numbers or [re, im] pairs");
}

}  // namespace

QuadratureConfig load_config(const std::string& path) {
  QuadratureConfig cfg;
  if (path.empty()) return cfg;
  const json j = read_json(path);
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "alpha_nodes") cfg.alpha_nodes = v.get<int>();
      else if (key == "alpha_log_range") cfg.alpha_log_range = v.get<std::array<double, 2>>();
      else if (key == "beta_window_init") cfg.beta_window_init = v.get<double>();
      else if (key == "beta_window_growth") cfg.beta_window_growth = v.get<double>();
      else if (key == "sup_samples") cfg.sup_samples = v.get<int>();
      else if (key == "refine_rounds") cfg.refine_rounds = v.get<int>();
      else if (key == "abs_tol") cfg.abs_tol = v.get<double>();
      else if (key == "rel_tol") cfg.rel_tol = v.get<double>();
      else if (key == "rel_tol_2d") cfg.rel_tol_2d = v.get<double>();
      else if (key == "budget") cfg.budget = v.get<std::size_t>();
      else throw ConfigError("unknown config key '" + key + "'");
    } catch (const json::exception& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

std::string config_schema() {
  const QuadratureConfig d;
  json j;
  j["alpha_nodes"] = d.alpha_nodes;
  j["alpha_log_range"] = d.alpha_log_range;
  j["beta_window_init"] = d.beta_window_init;
  j["beta_window_growth"] = d.beta_window_growth;
  j["sup_samples"] = d.sup_samples;
  j["refine_rounds"] = d.refine_rounds;
  j["abs_tol"] = d.abs_tol;
  j["rel_tol"] = d.rel_tol;
  j["rel_tol_2d"] = d.rel_tol_2d;
  j["budget"] = d.budget;
  return j.dump(2);
}

Matrix load_matrix(const std::string& source) {
  const std::size_t colon = source.find(':');
  if (!std::filesystem::exists(source) && colon != std::string::npos) {
    const std::string kind = source.substr(0, colon);
    const std::vector<std::string> args = split(source.substr(colon + 1), ',');
    try {
      if (kind == "diag") {
        std::vector<cplx> entries;
        for (const std::string& a : args) entries.push_back(to_complex(a));
        if (entries.empty()) throw ConfigError("diag needs entries");
        return diagonal_matrix(entries);
      }
      if (kind == "jordan") {
        if (args.size() != 2) throw ConfigError("jordan takes n,lambda");
        const double n = to_double(args[0]);
        if (n < 1 || n != std::floor(n)) throw ConfigError("jordan size must be a positive integer");
        return jordan_matrix(static_cast<int>(n), to_complex(args[1]));
      }
      if (kind == "random") {
        if (args.size() != 2) throw ConfigError("random takes seed,dim");
        const double seed = to_double(args[0]);
        const double dim = to_double(args[1]);
        if (seed < 0 || dim < 1 || dim != std::floor(dim)) throw ConfigError("random needs seed >= 0, dim >= 1");
        return random_stable_matrix(static_cast<std::uint64_t>(seed), static_cast<int>(dim));
      }
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    throw ConfigError("unknown matrix form '" + kind + "'");
  }
  const json j = read_json(source);
  if (!j.is_array() || j.empty()) throw ConfigError("matrix file must hold a non-empty array of rows");
  const std::size_t n = j.size();
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) throw ConfigError("matrix must be square");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = json_entry(j[r][c]);
  }
  return m;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  const std::vector<std::string> parts = split(text, ':');
  if (parts.size() == 4 && (parts[0] == "log" || parts[0] == "lin")) {
    const double a = to_double(parts[1]);
    const double b = to_double(parts[2]);
    const double k = to_double(parts[3]);
    if (k < 1 || k != std::floor(k)) throw ConfigError("grid point count must be a positive integer");
    if (parts[0] == "log" && !(a > 0.0 && b > 0.0)) throw ConfigError("log grid needs positive ends");
    const int count = static_cast<int>(k);
    for (int i = 0; i < count; ++i) {
      const double s = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
      out.push_back(parts[0] == "log" ? a * std::pow(b / a, s) : a + (b - a) * s);
    }
    return out;
  }
  for (const std::string& p : split(text, ',')) out.push_back(to_double(p));
  if (out.empty()) throw ConfigError("empty grid");
  return out;
}

unsigned thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BESOV_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw ConfigError("BESOV_THREADS must be a positive integer");
    hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

}  // namespace besov::cli
