// Command-line front end: fit one support, run the selection pipeline on a
// CSV, or drive the simulation benchmarks.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 numerical failure.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "glmsel/config.hpp"
#include "glmsel/csv.hpp"
#include "glmsel/errors.hpp"

namespace {

using namespace glmsel;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

GlmFamily parse_family(const std::string& text) {
  if (text == "gaussian") return GlmFamily::gaussian();
  if (text == "bernoulli_logit" || text == "logit") return GlmFamily::bernoulli_logit();
  throw ConfigError("unknown family '" + text + "'");
}

int default_workers() {
  if (const char* env = std::getenv("GLMSEL_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed >= 1) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<Index> parse_support_list(const std::string& text) {
  std::vector<Index> indices;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    indices.push_back(static_cast<Index>(std::strtoll(item.c_str(), nullptr, 10)));
  }
  return indices;
}

void ensure_output_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw ConfigError("output directory '" + dir + "' is not writable");
}

std::string metrics_path(const std::string& out_dir, const MetricsReport& report) {
  return out_dir + "/metrics_" + scenario_name(report.scenario) + "_n" +
         std::to_string(report.n) + "_p" + std::to_string(report.p) + ".csv";
}

std::string sweep_path(const std::string& out_dir, const SimulationConfig& config) {
  return out_dir + "/zeta_sweep_" + scenario_name(config.scenario) + "_n" +
         std::to_string(config.n) + "_p" + std::to_string(config.p) + ".csv";
}

int run_fit(const std::string& input, const std::string& response, const std::string& family_name,
            const std::string& support_list) {
  const GlmFamily family = parse_family(family_name);
  const Dataset data = read_csv_dataset(input, response);
  validate_dataset(data, family.kind);

  ModelSupport support(parse_support_list(support_list));
  validate_support(support, data.p(), data.n());

  FitOptions opts;
  opts.with_intercept = family.kind == Family::bernoulli_logit;
  FitResult fit = fit_qmle(family, gather_columns(data.design, support), data.response, opts);
  fit.support = support;

  std::printf("family: %s\n", glmsel::family_name(family.kind).c_str());
  std::printf("support size: %lld\n", static_cast<long long>(support.size()));
  if (fit.has_intercept) std::printf("intercept: %s\n", format_double(fit.intercept).c_str());
  for (Index k = 0; k < support.size(); ++k)
    std::printf("beta[%lld]: %s\n", static_cast<long long>(support.indices[k]),
                format_double(fit.beta_hat[k]).c_str());
  std::printf("loglik: %s\n", format_double(fit.loglik).c_str());
  std::printf("dispersion: %s\n", format_double(fit.dispersion_hat).c_str());
  std::printf("iterations: %d\n", fit.iterations);
  std::printf("converged: %s\n", fit.converged ? "true" : "false");
  std::printf("score_sup_norm: %s\n", format_double(fit.score_sup_norm).c_str());
  std::printf("separation_flag: %s\n", fit.separation_flag ? "true" : "false");
  if (!fit.converged) throw NumericError("fit did not converge");
  return kExitOk;
}

int run_select(const std::string& input, const std::string& response,
               const std::string& family_name, const std::string& out_dir,
               const LassoPathConfig& path_config) {
  const GlmFamily family = parse_family(family_name);
  const Dataset data = read_csv_dataset(input, response);
  validate_dataset(data, family.kind);
  ensure_output_dir(out_dir);

  DatasetAnalysis analysis = analyze_dataset(family, data.design, data.response, path_config);
  for (const std::string& note : analysis.sequence.notes)
    std::fprintf(stderr, "note: %s\n", note.c_str());
  if (analysis.candidates.empty()) throw NumericError("no candidate models generated");

  const std::vector<CriterionKind> kinds = {
      CriterionKind::aic(),    CriterionKind::bic(),    CriterionKind::gaic(),
      CriterionKind::gbic(),   CriterionKind::gbic_p(), CriterionKind::hgbic_p()};
  std::vector<SelectionResult> selections;
  selections.reserve(kinds.size());
  for (const CriterionKind& kind : kinds) selections.push_back(select_model(kind, analysis));

  write_candidates_csv(analysis, kinds, out_dir + "/candidates.csv");
  write_selection_csv(analysis, kinds, selections, out_dir + "/selection.csv");

  for (size_t k = 0; k < kinds.size(); ++k) {
    const CandidateFit& chosen = analysis.candidates[selections[k].chosen_index];
    std::string cols;
    for (Index j : chosen.support.indices) {
      if (!cols.empty()) cols += ',';
      cols += std::to_string(j);
    }
    std::printf("%s: candidate %lld, support {%s}\n", criterion_name(kinds[k]).c_str(),
                static_cast<long long>(selections[k].chosen_index), cols.c_str());
  }
  return kExitOk;
}

int run_simulate(const std::string& config_path, const std::string& out_dir, bool seed_set,
                 uint64_t seed, int workers) {
  SimulationConfig config = load_simulation_config(config_path);
  if (seed_set) config.base_seed = seed;
  ensure_output_dir(out_dir);

  const MetricsReport report = run_experiment(config, workers);
  const std::string path = metrics_path(out_dir, report);
  write_metrics_csv(report, path);
  if (report.n_failed > 0)
    std::fprintf(stderr, "%d replication(s) failed: %s\n", report.n_failed,
                 report.first_failure.c_str());
  std::printf("wrote %s\n", path.c_str());
  return kExitOk;
}

int run_sweep(const std::string& config_path, const std::string& out_dir, bool seed_set,
              uint64_t seed, int workers) {
  SimulationConfig config = load_simulation_config(config_path);
  if (seed_set) config.base_seed = seed;
  if (config.zeta_grid.empty()) throw ConfigError("sweep-zeta requires a zeta_grid");
  ensure_output_dir(out_dir);

  const std::vector<SweepPoint> points = zeta_sweep(config, workers);
  const std::string path = sweep_path(out_dir, config);
  write_sweep_csv(points, path);
  std::printf("wrote %s\n", path.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-likelihood model selection for possibly misspecified GLMs"};
  app.require_subcommand(1);

  std::string input;
  std::string response = "y";
  std::string family = "gaussian";
  std::string support_list;
  std::string config_path;
  std::string out_dir = ".";
  uint64_t seed = 0;
  int workers = default_workers();
  LassoPathConfig path_config;

  CLI::App* fit = app.add_subcommand("fit", "Fit one support by QMLE");
  fit->add_option("--input", input, "CSV dataset")->required();
  fit->add_option("--response", response, "response column name");
  fit->add_option("--family", family, "gaussian | bernoulli_logit");
  fit->add_option("--support", support_list, "comma list of design column indices")->required();

  CLI::App* select = app.add_subcommand("select", "Lasso path, refits, and criterion table");
  select->add_option("--input", input, "CSV dataset")->required();
  select->add_option("--response", response, "response column name");
  select->add_option("--family", family, "gaussian | bernoulli_logit");
  select->add_option("--out", out_dir, "output directory");
  select->add_option("--n-lambda", path_config.n_lambda, "lambda grid size");
  select->add_option("--lambda-min-ratio", path_config.lambda_min_ratio, "grid floor ratio");
  select->add_option("--max-support", path_config.max_support, "largest candidate support");
  select->add_option("--tol-cd", path_config.tol_cd, "coordinate descent tolerance");
  select->add_option("--max-passes", path_config.max_passes, "coordinate descent pass budget");
  select->add_flag("--no-standardize", [&](size_t) { path_config.standardize = false; },
                   "use raw columns");

  CLI::App* simulate = app.add_subcommand("simulate", "Replicated selection benchmark");
  simulate->add_option("--config", config_path, "experiment config file")->required();
  simulate->add_option("--out", out_dir, "output directory");
  CLI::Option* sim_seed = simulate->add_option("--seed", seed, "base seed override");
  simulate->add_option("--workers", workers, "worker threads");

  CLI::App* sweep = app.add_subcommand("sweep-zeta", "FDP/TPR sweep over the zeta grid");
  sweep->add_option("--config", config_path, "experiment config file")->required();
  sweep->add_option("--out", out_dir, "output directory");
  CLI::Option* sweep_seed = sweep->add_option("--seed", seed, "base seed override");
  sweep->add_option("--workers", workers, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (fit->parsed()) return run_fit(input, response, family, support_list);
    if (select->parsed()) return run_select(input, response, family, out_dir, path_config);
    if (simulate->parsed())
      return run_simulate(config_path, out_dir, sim_seed->count() > 0, seed, workers);
    if (sweep->parsed())
      return run_sweep(config_path, out_dir, sweep_seed->count() > 0, seed, workers);
  } catch (const ConfigError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitUsage;
  } catch (const DataError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitData;
  } catch (const NumericError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitNumeric;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitNumeric;
  }
  return kExitUsage;
}
