#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ergraph/experiments.hpp"

namespace ergraph {

/// Flat structured config: "[section]" headers and "key = value" lines,
/// '#' starts a comment anywhere. Every diagnostic carries file:line so
/// invalid configs point at the offending field.
class ConfigFile {
 public:
  static ConfigFile parse(std::istream& in, const std::string& filename);
  static ConfigFile parse_file(const std::string& path);

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  std::int64_t get_int(const std::string& section, const std::string& key) const;
  std::uint64_t get_uint(const std::string& section, const std::string& key) const;
  std::vector<std::int64_t> get_int_list(const std::string& section,
                                         const std::string& key) const;

  /// Rejects sections outside `allowed` and, per section present in
  /// `allowed_keys`, keys outside the listed set.
  void check_known(const std::vector<std::string>& allowed_sections,
                   const std::map<std::string, std::vector<std::string>>& allowed_keys) const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };

  [[noreturn]] void fail(int line, const std::string& message) const;
  const Entry& entry(const std::string& section, const std::string& key) const;

  std::string filename_;
  std::map<std::string, std::map<std::string, Entry>> sections_;
  std::map<std::string, int> section_lines_;
};

/// Model family selection shared by the config loader and the CLI flags.
struct ModelOptions {
  std::string kind = "homogeneous";
  std::optional<double> lambda;
  std::optional<double> delta;
  std::optional<double> theta;
  std::optional<double> coeff;
  std::optional<double> d;
  std::optional<double> eps;      // signed_perturbation budget threshold
  std::string eps_rule = "fixed";
};

struct BuiltFamily {
  ModelFamily family;
  std::string desc;
  double base_lambda = 0.0;  // limiting mean degree where meaningful
  std::optional<double> connectivity_d;
};

/// Builds one of the named families; rejects missing or extraneous
/// parameters for the chosen kind.
BuiltFamily build_model_family(const ModelOptions& options);

/// Assembles a validated ExperimentSpec for `kind_name` from a parsed
/// config with [experiment], [model], and [params] sections.
ExperimentSpec load_experiment_spec(const std::string& kind_name, const ConfigFile& config);

}  // namespace ergraph
