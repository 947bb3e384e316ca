#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "glmsel/config.hpp"
#include "glmsel/csv.hpp"

using namespace glmsel;

namespace {

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("doubles round-trip through the formatter") {
  for (const double v : {0.1, 1.0 / 3.0, 92.0, -1.7e-12, 3.141592653589793, 0.0}) {
    const std::string text = format_double(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
}

TEST_CASE("dataset CSV reading") {
  const std::string path = temp_file("glmsel_data.csv");
  write_file(path, "x1,y,x2\n1.0,2.0,3.0\n4.0,5.0,6.0\n");
  Dataset data = read_csv_dataset(path, "y");
  CHECK(data.n() == 2);
  CHECK(data.p() == 2);
  CHECK(data.response[0] == 2.0);
  CHECK(data.response[1] == 5.0);
  CHECK(data.design(0, 0) == 1.0);
  CHECK(data.design(0, 1) == 3.0);
  CHECK(data.column_names == std::vector<std::string>{"x1", "x2"});
  std::remove(path.c_str());
}

TEST_CASE("dataset CSV errors") {
  const std::string path = temp_file("glmsel_bad.csv");
  write_file(path, "x1,y\n1.0,hello\n");
  CHECK_THROWS_AS(read_csv_dataset(path, "y"), DataError);
  write_file(path, "x1,x2\n1.0,2.0\n");
  CHECK_THROWS_AS(read_csv_dataset(path, "y"), DataError);
  write_file(path, "x1,y\n1.0\n");
  CHECK_THROWS_AS(read_csv_dataset(path, "y"), DataError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_csv_dataset(path, "y"), DataError);
}

TEST_CASE("metrics CSV round-trips exactly") {
  MetricsReport report;
  report.scenario = Scenario::multiple_index;
  report.n = 200;
  report.p = 100;
  report.n_reps = 100;
  report.rows.push_back({"hgbic_p", 100.0, 100.0, 82.0 + 1.0 / 3.0, 1.25e-1, 0.0});
  report.rows.push_back({"aic", 1.0, 100.0, 97.12345678901234, 0.987654321, 8.55});
  report.rows.push_back({"oracle", 100.0, 100.0, 81.9, 0.11, 0.0});

  const std::string path = temp_file("glmsel_metrics.csv");
  write_metrics_csv(report, path);
  MetricsReport parsed = read_metrics_csv(path);
  REQUIRE(parsed.rows.size() == report.rows.size());
  CHECK(parsed.n == report.n);
  CHECK(parsed.p == report.p);
  for (size_t i = 0; i < report.rows.size(); ++i) {
    CHECK(parsed.rows[i].criterion == report.rows[i].criterion);
    CHECK(parsed.rows[i].consistent_pct == report.rows[i].consistent_pct);
    CHECK(parsed.rows[i].sure_pct == report.rows[i].sure_pct);
    CHECK(parsed.rows[i].mean_err == report.rows[i].mean_err);
    CHECK(parsed.rows[i].se_err == report.rows[i].se_err);
    CHECK(parsed.rows[i].mean_fp == report.rows[i].mean_fp);
  }
  std::remove(path.c_str());
}

TEST_CASE("sweep CSV round-trips exactly") {
  const std::vector<SweepPoint> points = {{0.5, 1.0 / 7.0, 0.99}, {1.0, 0.0, 1.0}};
  const std::string path = temp_file("glmsel_sweep.csv");
  write_sweep_csv(points, path);
  const std::vector<SweepPoint> parsed = read_sweep_csv(path);
  REQUIRE(parsed.size() == 2);
  for (size_t i = 0; i < points.size(); ++i) {
    CHECK(parsed[i].zeta == points[i].zeta);
    CHECK(parsed[i].mean_fdp == points[i].mean_fdp);
    CHECK(parsed[i].mean_tpr == points[i].mean_tpr);
  }
  std::remove(path.c_str());
}

TEST_CASE("config parsing covers every key") {
  const std::string path = temp_file("glmsel_config.cfg");
  write_file(path,
             "# benchmark config\n"
             "scenario = logistic_interaction\n"
             "n = 300\n"
             "p = 100\n"
             "n_reps = 7\n"
             "base_seed = 987654321\n"
             "criteria = aic, hgbic_p, hgbic_p_zeta(1.5)\n"
             "zeta_grid = 0.5, 1.0, 2\n"
             "test_size = 5000\n"
             "n_lambda = 80\n"
             "lambda_min_ratio = 0.01\n"
             "max_support = 40\n"
             "tol_cd = 1e-6\n"
             "max_passes = 500\n"
             "standardize = false\n");
  SimulationConfig config = load_simulation_config(path);
  CHECK(config.scenario == Scenario::logistic_interaction);
  CHECK(config.n == 300);
  CHECK(config.p == 100);
  CHECK(config.n_reps == 7);
  CHECK(config.base_seed == 987654321ULL);
  REQUIRE(config.criteria.size() == 3);
  CHECK(criterion_name(config.criteria[2]) == "hgbic_p_zeta(1.5)");
  REQUIRE(config.zeta_grid.size() == 3);
  CHECK(config.zeta_grid[2] == 2.0);
  CHECK(config.test_size == 5000);
  CHECK(config.path.n_lambda == 80);
  CHECK(config.path.lambda_min_ratio == 0.01);
  CHECK(config.path.max_support == 40);
  CHECK(config.path.tol_cd == 1e-6);
  CHECK(config.path.max_passes == 500);
  CHECK_FALSE(config.path.standardize);
  std::remove(path.c_str());
}

TEST_CASE("unknown or malformed config keys are rejected") {
  const std::string path = temp_file("glmsel_config_bad.cfg");
  write_file(path, "scenario = multiple_index\nn_repz = 10\n");
  CHECK_THROWS_AS(load_simulation_config(path), ConfigError);
  write_file(path, "scenario = banana\n");
  CHECK_THROWS_AS(load_simulation_config(path), ConfigError);
  write_file(path, "n\n");
  CHECK_THROWS_AS(load_simulation_config(path), ConfigError);
  write_file(path, "n_reps = -3\n");
  CHECK_THROWS_AS(load_simulation_config(path), ConfigError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_simulation_config(path), ConfigError);
}

TEST_CASE("config write-read round-trip") {
  SimulationConfig config;
  config.scenario = Scenario::multiple_index;
  config.n = 200;
  config.p = 400;
  config.n_reps = 100;
  config.base_seed = 31;
  config.criteria = {CriterionKind::hgbic_p()};
  config.zeta_grid = {1.0, 1.5, 2.0};
  const std::string path = temp_file("glmsel_config_rt.cfg");
  write_simulation_config(config, path);
  SimulationConfig parsed = load_simulation_config(path);
  CHECK(parsed.scenario == config.scenario);
  CHECK(parsed.n == config.n);
  CHECK(parsed.p == config.p);
  CHECK(parsed.base_seed == config.base_seed);
  REQUIRE(parsed.criteria.size() == 1);
  CHECK(criterion_name(parsed.criteria[0]) == "hgbic_p");
  CHECK(parsed.zeta_grid == config.zeta_grid);
  std::remove(path.c_str());
}
