#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ergraph/families.hpp"
#include "ergraph/model.hpp"

namespace ergraph {

enum class ExperimentKind {
  giant_component,
  fragmentation,
  critical_window,
  connectivity,
  degree_distribution,
};

const char* experiment_kind_name(ExperimentKind kind) noexcept;
std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) noexcept;

/// Full description of one Monte Carlo run. Replications are keyed by
/// (seed, n, rep), so results are independent of scheduling and threads.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::giant_component;
  ModelFamily family;
  std::string model_desc;  // free-form echo for the run notes
  double base_lambda = 0.0;  // limiting mean degree: zeta/fragmentation/Poisson reference
  std::vector<std::int64_t> n_grid;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;
  int threads = 1;

  double nu = 0.0;       // giant_component: deviation window exponent, in (1/2, 1)
  double a = 0.0;        // fragmentation lower factor / critical-window factor in (0,1)
  double a_prime = 0.0;  // fragmentation upper factor
  EpsRule eps{};         // degree_distribution threshold rule

  // When set, the connectivity run reports the two Example-4.3-style
  // admissibility conditions for this d alongside the frequencies.
  std::optional<double> connectivity_d;
};

struct ReplicationOutcome {
  std::int64_t n = 0;
  std::int64_t rep = 0;
  std::uint64_t seed_child = 0;
  std::int64_t cmax = 0;
  double stat = 0.0;  // degree_distribution: max |empirical - Poisson| mass gap
  int flag = 0;       // primary event indicator
  int flag2 = 0;      // fragmentation: second indicator
};

struct FrequencyRow {
  std::string name;
  std::int64_t n = 0;
  std::int64_t reps = 0;
  double frequency = 0.0;
  double se = 0.0;
  double wall_ms = 0.0;
};

struct ExperimentResult {
  ExperimentKind kind = ExperimentKind::giant_component;
  std::uint64_t seed = 0;
  std::vector<std::string> raw_columns;  // outcome columns after the fixed prefix
  std::vector<ReplicationOutcome> raw;   // in (n, rep) order
  std::vector<FrequencyRow> aggregates;
  std::vector<std::string> notes;  // regime constants, admissibility checks
  double wall_ms = 0.0;
};

/// Dispatch on spec.kind after validating the regime parameters.
ExperimentResult run_experiment(const ExperimentSpec& spec);

ExperimentResult run_giant_component(const ExperimentSpec& spec);
ExperimentResult run_fragmentation(const ExperimentSpec& spec);
ExperimentResult run_critical_window(const ExperimentSpec& spec);
ExperimentResult run_connectivity(const ExperimentSpec& spec);
ExperimentResult run_degree_distribution(const ExperimentSpec& spec);

/// Raw CSV: name,n,rep,seed_child,<outcome columns>. Byte-identical across
/// reruns of the same spec and seed, whatever the thread count.
void write_raw_csv(const ExperimentResult& result, std::ostream& out);

/// Aggregate CSV: name,n,reps,frequency,stderr,wall_ms. Identical across
/// reruns except for the wall-clock column.
void write_aggregate_csv(const ExperimentResult& result, std::ostream& out);

}  // namespace ergraph
