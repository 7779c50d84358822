#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "besov/error.hpp"
#include "besov/measures.hpp"
#include "besov/operator.hpp"
#include "function_spec.hpp"
#include "inputs.hpp"
#include "suites.hpp"
#include "table.hpp"

namespace {

using besov::cplx;
namespace cli = besov::cli;

std::string write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

TEST(ParseComplex, Literals) {
  EXPECT_EQ(cli::parse_complex("2.5"), cplx(2.5, 0.0));
  EXPECT_EQ(cli::parse_complex("1-2.5i"), cplx(1.0, -2.5));
  EXPECT_EQ(cli::parse_complex("3i"), cplx(0.0, 3.0));
  EXPECT_EQ(cli::parse_complex("-i"), cplx(0.0, -1.0));
  EXPECT_EQ(cli::parse_complex("1e-3+1e2i"), cplx(1e-3, 100.0));
  EXPECT_THROW(cli::parse_complex("1+"), besov::Error);
  EXPECT_THROW(cli::parse_complex("abc"), besov::Error);
}

TEST(FunctionSpec, FamiliesAndCompositions) {
  const cplx z(0.6, -1.1);
  EXPECT_LT(std::abs(cli::parse_function_spec("cayley:n=3").function()(z) - std::pow((z - 1.0) / (z + 1.0), 3)),
            1e-15);
  const auto f = cli::parse_function_spec("sum(exp:a=1,scale(2i,resolvent:a=1+i))").function();
  EXPECT_LT(std::abs(f(z) - (std::exp(-z) + cplx(0, 2) / (z + cplx(1, 1)))), 1e-15);
  const auto g = cli::parse_function_spec("product(shift(1,exp:a=2),rescale(3,resolvent2:a=1))").function();
  EXPECT_LT(std::abs(g(z) - std::exp(-2.0 * (z + 1.0)) / std::pow(3.0 * z + 1.0, 2)), 1e-15);
  const auto d = cli::parse_function_spec("deriv(exprecip:t=2)").function();
  EXPECT_LT(std::abs(d(z) - 2.0 * std::exp(-2.0 / (z + 1.0)) / std::pow(z + 1.0, 2)), 1e-14);
}

TEST(FunctionSpec, TextRoundTrip) {
  for (const char* text : {"cayley:n=4", "sum(exp:a=1,const:c=2)", "deriv(shift(0.5,regexp:t=3))"}) {
    const auto spec = cli::parse_function_spec(text);
    const auto again = cli::parse_function_spec(spec.text());
    const cplx z(0.9, 0.4);
    EXPECT_EQ(spec.function()(z), again.function()(z)) << text;
  }
}

TEST(FunctionSpec, Rejections) {
  for (const char* text : {"cayley:n=0", "cayley:n=2.5", "cayley:t=1", "gauss:a=1", "sum()", "shift(-1,exp:a=1)",
                           "rescale(0,exp:a=1)", "exp:a=1)", "product(exp:a=1", ""}) {
    EXPECT_THROW(cli::parse_function_spec(text), besov::Error) << text;
  }
}

TEST(FunctionSpec, MeasureLaplaceMatchesFunction) {
  const besov::QuadratureConfig cfg;
  for (const char* text : {"cayley:n=3", "exprecip:t=2", "exp:a=1.5", "resolvent:a=1+2i", "resolvent2:a=0.5",
                           "const:c=1-i", "sum(shift(1,cayley:n=2),rescale(2,exprecip:t=1))",
                           "product(exp:a=1,resolvent:a=2)"}) {
    const auto spec = cli::parse_function_spec(text);
    const auto mu = spec.measure(cfg);
    ASSERT_TRUE(mu.has_value()) << text;
    const auto f = spec.function();
    for (cplx z : {cplx(0.3, 0.0), cplx(1.0, 4.0)}) {
      EXPECT_LT(std::abs(besov::laplace(*mu, z, cfg).value - f(z)), 1e-6) << text;
    }
  }
  EXPECT_FALSE(cli::parse_function_spec("regexp:t=1").measure(cfg).has_value());
  EXPECT_FALSE(cli::parse_function_spec("deriv(exp:a=1)").measure(cfg).has_value());
}

TEST(Config, LoadAndReject) {
  const auto defaults = cli::load_config("");
  EXPECT_EQ(defaults.alpha_nodes, besov::QuadratureConfig{}.alpha_nodes);
  const auto cfg = cli::load_config(write_temp("besov_cfg_ok.json", R"({"rel_tol": 1e-4, "alpha_nodes": 32})"));
  EXPECT_EQ(cfg.rel_tol, 1e-4);
  EXPECT_EQ(cfg.alpha_nodes, 32);
  EXPECT_THROW(cli::load_config(write_temp("besov_cfg_key.json", R"({"beta_window": 3})")), cli::ConfigError);
  EXPECT_THROW(cli::load_config(write_temp("besov_cfg_type.json", R"({"alpha_nodes": "many"})")), cli::ConfigError);
  EXPECT_THROW(cli::load_config(write_temp("besov_cfg_syntax.json", "{")), cli::ConfigError);
  EXPECT_THROW(cli::load_config(write_temp("besov_cfg_range.json", R"({"rel_tol": -1})")), cli::ConfigError);
  EXPECT_NE(cli::config_schema().find("alpha_nodes"), std::string::npos);
}

TEST(Matrix, NamedAndFileForms) {
  const besov::Matrix d = cli::load_matrix("diag:1,2+i");
  EXPECT_EQ(d(1, 1), cplx(2.0, 1.0));
  EXPECT_EQ(d(0, 1), cplx(0.0));
  const besov::Matrix j = cli::load_matrix("jordan:3,2");
  EXPECT_EQ(j(0, 1), cplx(1.0));
  EXPECT_EQ(j(2, 2), cplx(2.0));
  EXPECT_EQ(cli::load_matrix("random:4,3"), besov::random_stable_matrix(4, 3));
  const besov::Matrix f = cli::load_matrix(write_temp("besov_mat.json", "[[[1, 0], 2], [0, [3, -1]]]"));
  EXPECT_EQ(f(0, 1), cplx(2.0));
  EXPECT_EQ(f(1, 1), cplx(3.0, -1.0));
  EXPECT_ANY_THROW(cli::load_matrix(write_temp("besov_mat_ragged.json", "[[1, 2], [3]]")));
  EXPECT_ANY_THROW(cli::load_matrix("diag:"));
  EXPECT_ANY_THROW(cli::load_matrix("/nonexistent/matrix.json"));
}

TEST(Grid, Forms) {
  EXPECT_EQ(cli::parse_grid("1,10,100"), (std::vector<double>{1.0, 10.0, 100.0}));
  const auto lg = cli::parse_grid("log:0.1:1000:5");
  ASSERT_EQ(lg.size(), 5u);
  EXPECT_NEAR(lg[2], 10.0, 1e-12);
  const auto ln = cli::parse_grid("lin:0:1:3");
  EXPECT_EQ(ln, (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_ANY_THROW(cli::parse_grid("log:0:1:3"));
  EXPECT_ANY_THROW(cli::parse_grid("1,,2"));
}

TEST(Threads, EnvironmentCap) {
  setenv("BESOV_THREADS", "1", 1);
  EXPECT_EQ(cli::thread_count(), 1u);
  unsetenv("BESOV_THREADS");
  EXPECT_GE(cli::thread_count(), 1u);
}

TEST(Table, CsvAndJson) {
  cli::Table t{{"name", "x", "n", "ok"}, {}};
  t.add({std::string("a,b"), 0.1, 3LL, true});
  t.add({std::string("c"), std::nan(""), -1LL, false});
  std::ostringstream csv;
  cli::write_csv(csv, t);
  EXPECT_EQ(csv.str(), "name,x,n,ok\n\"a,b\",0.10000000000000001,3,true\nc,nan,-1,false\n");
  std::ostringstream json;
  cli::write_json(json, t);
  EXPECT_NE(json.str().find("\"x\": null"), std::string::npos);
  EXPECT_NE(json.str().find("\"name\": \"a,b\""), std::string::npos);
}

TEST(Table, SvgSkipsNonPositiveOnLogAxes) {
  cli::Table t{{"t", "y"}, {}};
  for (double x : {0.0, 1.0, 10.0, 100.0}) t.add({x, x * x});
  std::ostringstream os;
  cli::write_svg(os, t, {"t", "y", true, true, "demo"});
  const std::string s = os.str();
  EXPECT_NE(s.find("<svg"), std::string::npos);
  EXPECT_NE(s.find("<polyline"), std::string::npos);
  EXPECT_NE(s.find("demo"), std::string::npos);
}

TEST(ParallelFor, CoversEveryIndexAndRethrows) {
  std::vector<int> hit(100, 0);
  cli::parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) EXPECT_EQ(h, 1);
  EXPECT_THROW(cli::parallel_for(10, 3,
                                 [](std::size_t i) {
                                   if (i == 7) throw std::runtime_error("x");
                                 }),
               std::runtime_error);
}

TEST(Suites, Registry) {
  const auto groups = cli::suite_groups();
  EXPECT_EQ(groups.size(), 7u);
  EXPECT_EQ(cli::suite_names("pairing"), (std::vector<std::string>{"grid", "analytic"}));
  EXPECT_THROW(cli::suite_names("nope"), std::invalid_argument);
  EXPECT_THROW(cli::run_suite("pairing", "nope", {}, 1), std::invalid_argument);
}

TEST(Suites, PropertyScalingPasses) {
  const auto rep = cli::run_suite("property", "scaling", {}, 1);
  EXPECT_FALSE(rep.checks.empty());
  EXPECT_TRUE(rep.passed());
}

}  // namespace
