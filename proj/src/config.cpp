#include "glmsel/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "glmsel/errors.hpp"

namespace glmsel {

namespace {

std::string trim(const std::string& text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return text.substr(begin, end - begin);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double to_double(const std::string& value, const std::string& key) {
  const char* begin = value.c_str();
  char* end = nullptr;
  const double parsed = std::strtod(begin, &end);
  if (end == begin || end != begin + value.size())
    throw ConfigError("invalid numeric value '" + value + "' for key '" + key + "'");
  return parsed;
}

long long to_int(const std::string& value, const std::string& key) {
  const char* begin = value.c_str();
  char* end = nullptr;
  const long long parsed = std::strtoll(begin, &end, 10);
  if (end == begin || end != begin + value.size())
    throw ConfigError("invalid integer value '" + value + "' for key '" + key + "'");
  return parsed;
}

uint64_t to_uint64(const std::string& value, const std::string& key) {
  const char* begin = value.c_str();
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(begin, &end, 10);
  if (end == begin || end != begin + value.size())
    throw ConfigError("invalid seed value '" + value + "' for key '" + key + "'");
  return parsed;
}

bool to_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("invalid boolean value '" + value + "' for key '" + key + "'");
}

std::vector<CriterionKind> default_criteria() {
  return {CriterionKind::aic(),    CriterionKind::bic(),    CriterionKind::gaic(),
          CriterionKind::gbic(),   CriterionKind::gbic_p(), CriterionKind::hgbic_p()};
}

}  // namespace

SimulationConfig load_simulation_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");

  SimulationConfig config;
  config.criteria = default_criteria();

  std::string line;
  Index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");

    if (key == "scenario") {
      config.scenario = parse_scenario(value);
    } else if (key == "n") {
      config.n = static_cast<Index>(to_int(value, key));
    } else if (key == "p") {
      config.p = static_cast<Index>(to_int(value, key));
    } else if (key == "n_reps") {
      config.n_reps = static_cast<int>(to_int(value, key));
    } else if (key == "base_seed") {
      config.base_seed = to_uint64(value, key);
    } else if (key == "criteria") {
      config.criteria.clear();
      for (const std::string& item : split_list(value))
        config.criteria.push_back(parse_criterion(item));
      if (config.criteria.empty()) throw ConfigError("criteria list is empty");
    } else if (key == "zeta_grid") {
      config.zeta_grid.clear();
      for (const std::string& item : split_list(value)) {
        const double zeta = to_double(item, key);
        if (!(zeta > 0.0)) throw ConfigError("zeta_grid entries must be positive");
        config.zeta_grid.push_back(zeta);
      }
    } else if (key == "test_size") {
      config.test_size = static_cast<Index>(to_int(value, key));
    } else if (key == "n_lambda") {
      config.path.n_lambda = static_cast<Index>(to_int(value, key));
    } else if (key == "lambda_min_ratio") {
      config.path.lambda_min_ratio = to_double(value, key);
    } else if (key == "max_support") {
      config.path.max_support = static_cast<Index>(to_int(value, key));
    } else if (key == "tol_cd") {
      config.path.tol_cd = to_double(value, key);
    } else if (key == "max_passes") {
      config.path.max_passes = static_cast<Index>(to_int(value, key));
    } else if (key == "standardize") {
      config.path.standardize = to_bool(value, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  if (config.n < 1 || config.p < 1) throw ConfigError("n and p must be positive");
  if (config.n_reps < 1) throw ConfigError("n_reps must be at least 1");
  return config;
}

void write_simulation_config(const SimulationConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << "scenario = " << scenario_name(config.scenario) << '\n';
  out << "n = " << config.n << '\n';
  out << "p = " << config.p << '\n';
  out << "n_reps = " << config.n_reps << '\n';
  out << "base_seed = " << config.base_seed << '\n';
  out << "criteria = ";
  for (size_t i = 0; i < config.criteria.size(); ++i) {
    if (i > 0) out << ',';
    out << criterion_name(config.criteria[i]);
  }
  out << '\n';
  if (!config.zeta_grid.empty()) {
    out << "zeta_grid = ";
    for (size_t i = 0; i < config.zeta_grid.size(); ++i) {
      if (i > 0) out << ',';
      out << config.zeta_grid[i];
    }
    out << '\n';
  }
  out << "test_size = " << config.test_size << '\n';
  out << "n_lambda = " << config.path.n_lambda << '\n';
  out << "lambda_min_ratio = " << config.path.lambda_min_ratio << '\n';
  out << "max_support = " << config.path.max_support << '\n';
  out << "tol_cd = " << config.path.tol_cd << '\n';
  out << "max_passes = " << config.path.max_passes << '\n';
  out << "standardize = " << (config.path.standardize ? "true" : "false") << '\n';
}

}  // namespace glmsel
