#include "ergraph/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ergraph {

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

}  // namespace

void ConfigFile::fail(int line, const std::string& message) const {
  throw std::invalid_argument(filename_ + ":" + std::to_string(line) + ": " + message);
}

ConfigFile ConfigFile::parse(std::istream& in, const std::string& filename) {
  ConfigFile config;
  config.filename_ = filename;
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') config.fail(line_no, "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section.empty()) config.fail(line_no, "empty section name");
      if (config.sections_.count(section)) {
        config.fail(line_no, "duplicate section [" + section + "]");
      }
      config.sections_[section];
      config.section_lines_[section] = line_no;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) config.fail(line_no, "expected key = value");
    if (section.empty()) config.fail(line_no, "key outside any [section]");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) config.fail(line_no, "empty key");
    if (value.empty()) config.fail(line_no, "empty value for key '" + key + "'");
    auto [it, inserted] = config.sections_[section].emplace(key, Entry{value, line_no});
    if (!inserted) {
      config.fail(line_no, "duplicate key '" + key + "' (first at line " +
                               std::to_string(it->second.line) + ")");
    }
  }
  return config;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  return parse(in, path);
}

bool ConfigFile::has_section(const std::string& section) const {
  return sections_.count(section) > 0;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

const ConfigFile::Entry& ConfigFile::entry(const std::string& section,
                                           const std::string& key) const {
  const auto sec = sections_.find(section);
  if (sec == sections_.end()) {
    throw std::invalid_argument(filename_ + ": missing section [" + section + "]");
  }
  const auto it = sec->second.find(key);
  if (it == sec->second.end()) {
    throw std::invalid_argument(filename_ + ": missing key '" + key + "' in [" + section + "]");
  }
  return it->second;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key) const {
  return entry(section, key).value;
}

double ConfigFile::get_double(const std::string& section, const std::string& key) const {
  const auto& e = entry(section, key);
  const char* begin = e.value.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + e.value.size()) {
    fail(e.line, "value of '" + key + "' is not a real number: " + e.value);
  }
  return v;
}

std::int64_t ConfigFile::get_int(const std::string& section, const std::string& key) const {
  const auto& e = entry(section, key);
  const char* begin = e.value.c_str();
  char* end = nullptr;
  const long long v = std::strtoll(begin, &end, 10);
  if (end != begin + e.value.size()) {
    fail(e.line, "value of '" + key + "' is not an integer: " + e.value);
  }
  return v;
}

std::uint64_t ConfigFile::get_uint(const std::string& section, const std::string& key) const {
  const auto& e = entry(section, key);
  if (!e.value.empty() && e.value.front() == '-') {
    fail(e.line, "value of '" + key + "' must be nonnegative: " + e.value);
  }
  const char* begin = e.value.c_str();
  char* end = nullptr;
  const unsigned long long v = std::strtoull(begin, &end, 10);
  if (end != begin + e.value.size()) {
    fail(e.line, "value of '" + key + "' is not an unsigned integer: " + e.value);
  }
  return v;
}

std::vector<std::int64_t> ConfigFile::get_int_list(const std::string& section,
                                                   const std::string& key) const {
  const auto& e = entry(section, key);
  std::vector<std::int64_t> values;
  std::stringstream ss(e.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string token = trim(item);
    if (token.empty()) fail(e.line, "empty entry in list '" + key + "'");
    const char* begin = token.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (end != begin + token.size()) {
      fail(e.line, "list '" + key + "' has a non-integer entry: " + token);
    }
    values.push_back(v);
  }
  if (values.empty()) fail(e.line, "list '" + key + "' is empty");
  return values;
}

void ConfigFile::check_known(
    const std::vector<std::string>& allowed_sections,
    const std::map<std::string, std::vector<std::string>>& allowed_keys) const {
  for (const auto& [section, entries] : sections_) {
    if (std::find(allowed_sections.begin(), allowed_sections.end(), section) ==
        allowed_sections.end()) {
      fail(section_lines_.at(section), "unknown section [" + section + "]");
    }
    const auto allowed = allowed_keys.find(section);
    if (allowed == allowed_keys.end()) continue;
    for (const auto& [key, e] : entries) {
      if (std::find(allowed->second.begin(), allowed->second.end(), key) ==
          allowed->second.end()) {
        fail(e.line, "unknown key '" + key + "' in [" + section + "]");
      }
    }
  }
}

namespace {

double require(const std::optional<double>& value, const char* kind, const char* name) {
  if (!value) {
    throw std::invalid_argument(std::string("model kind '") + kind +
                                "' needs parameter '" + name + "'");
  }
  return *value;
}

void forbid(const std::optional<double>& value, const char* kind, const char* name) {
  if (value) {
    throw std::invalid_argument(std::string("model kind '") + kind +
                                "' does not take parameter '" + name + "'");
  }
}

EpsRule parse_eps_rule(const std::string& rule, double value) {
  EpsRule eps;
  eps.value = value;
  if (rule == "fixed") {
    eps.kind = EpsRule::Kind::fixed;
  } else if (rule == "inv_sqrt") {
    eps.kind = EpsRule::Kind::inv_sqrt;
  } else {
    throw std::invalid_argument("unknown eps rule '" + rule + "' (use fixed or inv_sqrt)");
  }
  return eps;
}

}  // namespace

BuiltFamily build_model_family(const ModelOptions& options) {
  BuiltFamily built;
  const std::string& kind = options.kind;
  const char* k = kind.c_str();

  if (kind == "homogeneous") {
    const double lambda = require(options.lambda, k, "lambda");
    forbid(options.delta, k, "delta");
    forbid(options.theta, k, "theta");
    forbid(options.coeff, k, "coeff");
    forbid(options.d, k, "d");
    forbid(options.eps, k, "eps");
    built.family = homogeneous_family(lambda);
    built.base_lambda = lambda;
    built.desc = "homogeneous lambda = " + std::to_string(lambda);
  } else if (kind == "supercritical_perturbed") {
    const double lambda = require(options.lambda, k, "lambda");
    const double delta = require(options.delta, k, "delta");
    forbid(options.theta, k, "theta");
    forbid(options.coeff, k, "coeff");
    forbid(options.d, k, "d");
    forbid(options.eps, k, "eps");
    built.family = supercritical_perturbed_family(lambda, delta);
    built.base_lambda = lambda;
    built.desc = "supercritical_perturbed lambda = " + std::to_string(lambda) +
                 ", delta = " + std::to_string(delta);
  } else if (kind == "critical") {
    const double theta = require(options.theta, k, "theta");
    forbid(options.lambda, k, "lambda");
    forbid(options.delta, k, "delta");
    forbid(options.coeff, k, "coeff");
    forbid(options.d, k, "d");
    forbid(options.eps, k, "eps");
    built.family = critical_family(theta);
    built.base_lambda = 1.0;
    built.desc = "critical theta = " + std::to_string(theta);
  } else if (kind == "log_growth") {
    const double coeff = require(options.coeff, k, "coeff");
    forbid(options.lambda, k, "lambda");
    forbid(options.delta, k, "delta");
    forbid(options.theta, k, "theta");
    forbid(options.d, k, "d");
    forbid(options.eps, k, "eps");
    built.family = log_growth_family(coeff);
    built.desc = "log_growth coeff = " + std::to_string(coeff);
  } else if (kind == "complete") {
    forbid(options.lambda, k, "lambda");
    forbid(options.delta, k, "delta");
    forbid(options.theta, k, "theta");
    forbid(options.coeff, k, "coeff");
    forbid(options.d, k, "d");
    forbid(options.eps, k, "eps");
    built.family = complete_family();
    built.desc = "complete";
  } else if (kind == "signed_perturbation") {
    const double lambda = require(options.lambda, k, "lambda");
    const double delta = require(options.delta, k, "delta");
    const double eps = require(options.eps, k, "eps");
    forbid(options.theta, k, "theta");
    forbid(options.coeff, k, "coeff");
    forbid(options.d, k, "d");
    built.family = signed_perturbation_family(lambda, delta, parse_eps_rule(options.eps_rule, eps));
    built.base_lambda = lambda;
    built.desc = "signed_perturbation lambda = " + std::to_string(lambda) +
                 ", delta = " + std::to_string(delta);
  } else if (kind == "connectivity_example") {
    const double d = require(options.d, k, "d");
    forbid(options.lambda, k, "lambda");
    forbid(options.delta, k, "delta");
    forbid(options.theta, k, "theta");
    forbid(options.coeff, k, "coeff");
    forbid(options.eps, k, "eps");
    built.family = connectivity_inhom_family(d);
    built.connectivity_d = d;
    built.desc = "connectivity_example d = " + std::to_string(d);
  } else {
    throw std::invalid_argument(
        "unknown model kind '" + kind +
        "' (use homogeneous, supercritical_perturbed, critical, log_growth, complete, "
        "signed_perturbation, or connectivity_example)");
  }
  return built;
}

ExperimentSpec load_experiment_spec(const std::string& kind_name, const ConfigFile& config) {
  const auto kind = parse_experiment_kind(kind_name);
  if (!kind) {
    throw std::invalid_argument(
        "unknown experiment '" + kind_name +
        "' (use giant_component, fragmentation, critical_window, connectivity, or "
        "degree_distribution)");
  }

  ExperimentSpec spec;
  spec.kind = *kind;

  if (config.has("experiment", "name") &&
      config.get_string("experiment", "name") != kind_name) {
    throw std::invalid_argument("config names experiment '" +
                                config.get_string("experiment", "name") +
                                "' but the command line asked for '" + kind_name + "'");
  }
  spec.n_grid = config.get_int_list("experiment", "n_grid");
  spec.reps = config.get_int("experiment", "reps");
  spec.seed = config.get_uint("experiment", "seed");
  spec.threads = config.has("experiment", "threads")
                     ? static_cast<int>(config.get_int("experiment", "threads"))
                     : 1;

  ModelOptions options;
  options.kind = config.get_string("model", "kind");
  const auto read_opt = [&](const char* key) -> std::optional<double> {
    if (config.has("model", key)) return config.get_double("model", key);
    return std::nullopt;
  };
  options.lambda = read_opt("lambda");
  options.delta = read_opt("delta");
  options.theta = read_opt("theta");
  options.coeff = read_opt("coeff");
  options.d = read_opt("d");

  // [params] holds the experiment thresholds; eps is shared with the
  // signed_perturbation model budget.
  std::vector<std::string> params_keys;
  switch (spec.kind) {
    case ExperimentKind::giant_component:
      spec.nu = config.get_double("params", "nu");
      params_keys = {"nu"};
      break;
    case ExperimentKind::fragmentation:
      spec.a = config.get_double("params", "a");
      spec.a_prime = config.get_double("params", "a_prime");
      params_keys = {"a", "a_prime"};
      break;
    case ExperimentKind::critical_window:
      spec.a = config.get_double("params", "a");
      params_keys = {"a"};
      break;
    case ExperimentKind::connectivity:
      params_keys = {};
      break;
    case ExperimentKind::degree_distribution: {
      const double eps_value = config.get_double("params", "eps");
      const std::string rule = config.has("params", "eps_rule")
                                   ? config.get_string("params", "eps_rule")
                                   : "fixed";
      spec.eps = parse_eps_rule(rule, eps_value);
      params_keys = {"eps", "eps_rule"};
      break;
    }
  }

  if (options.kind == "signed_perturbation") {
    options.eps = config.get_double("params", "eps");
    options.eps_rule = config.has("params", "eps_rule")
                           ? config.get_string("params", "eps_rule")
                           : "fixed";
    if (std::find(params_keys.begin(), params_keys.end(), "eps") == params_keys.end()) {
      params_keys.push_back("eps");
      params_keys.push_back("eps_rule");
    }
  }

  auto built = build_model_family(options);
  spec.family = std::move(built.family);
  spec.model_desc = built.desc;
  spec.base_lambda = built.base_lambda;
  spec.connectivity_d = built.connectivity_d;

  config.check_known(
      {"experiment", "model", "params"},
      {{"experiment", {"name", "n_grid", "reps", "seed", "threads"}},
       {"model", {"kind", "lambda", "delta", "theta", "coeff", "d"}},
       {"params", params_keys}});

  return spec;
}

}  // namespace ergraph
