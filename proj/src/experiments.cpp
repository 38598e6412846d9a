#include "ergraph/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "ergraph/format.hpp"
#include "ergraph/graph.hpp"
#include "ergraph/numeric.hpp"
#include "ergraph/regimes.hpp"
#include "ergraph/rng.hpp"
#include "ergraph/sampler.hpp"

namespace ergraph {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

[[noreturn]] void config_error(const std::string& message) { throw std::invalid_argument(message); }

void validate_common(const ExperimentSpec& spec) {
  if (!spec.family) config_error("experiment needs a model family");
  if (spec.n_grid.empty()) config_error("n_grid must be nonempty");
  for (std::size_t i = 0; i < spec.n_grid.size(); ++i) {
    if (spec.n_grid[i] < 2) config_error("n_grid entries must be >= 2");
    if (i > 0 && spec.n_grid[i] <= spec.n_grid[i - 1]) {
      config_error("n_grid must be strictly increasing");
    }
  }
  if (spec.reps < 1) config_error("reps must be >= 1");
  if (spec.threads < 1) config_error("threads must be >= 1");
}

void check_kind(const ExperimentSpec& spec, ExperimentKind expected) {
  if (spec.kind != expected) {
    config_error(std::string("spec kind is ") + experiment_kind_name(spec.kind) +
                 " but the runner expects " + experiment_kind_name(expected));
  }
}

double binomial_se(double phat, std::int64_t reps) {
  return std::sqrt(phat * (1.0 - phat) / static_cast<double>(reps));
}

// One aggregate CSV row per definition per n: the frequency of one
// indicator field over that n's replications.
struct AggregateDef {
  std::string name;
  int ReplicationOutcome::* indicator;
};

using Measure = std::function<ReplicationOutcome(const GraphSample&)>;
using MeasureFactory = std::function<Measure(std::int64_t, const EdgeProbModel&)>;

// Runs spec.reps replications at each grid n. Replications are keyed by
// (seed, n, rep) and written to fixed slots, so thread count and
// scheduling order cannot change any outcome.
ExperimentResult run_grid(const ExperimentSpec& spec, const MeasureFactory& measure_factory,
                          const std::vector<AggregateDef>& defs) {
  ExperimentResult result;
  result.kind = spec.kind;
  result.seed = spec.seed;
  if (!spec.model_desc.empty()) result.notes.push_back("model = " + spec.model_desc);

  const auto total_start = Clock::now();
  for (const std::int64_t n : spec.n_grid) {
    const auto n_start = Clock::now();
    const EdgeProbModel model = spec.family(n);
    if (model.n() != n) config_error("model family returned a model with the wrong n");
    const Measure measure = measure_factory(n, model);

    std::vector<ReplicationOutcome> rows(static_cast<std::size_t>(spec.reps));
    const auto worker = [&](std::int64_t first) {
      for (std::int64_t r = first; r < spec.reps; r += spec.threads) {
        const std::uint64_t child =
            Rng::derive(Rng::derive(spec.seed, static_cast<std::uint64_t>(n)),
                        static_cast<std::uint64_t>(r));
        ReplicationOutcome row = measure(sample(model, child));
        row.n = n;
        row.rep = r;
        row.seed_child = child;
        rows[static_cast<std::size_t>(r)] = row;
      }
    };

    if (spec.threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(spec.threads));
      for (int t = 0; t < spec.threads; ++t) pool.emplace_back(worker, t);
      for (auto& th : pool) th.join();
    }

    const double wall = ms_since(n_start);
    for (const auto& def : defs) {
      std::int64_t hits = 0;
      for (const auto& row : rows) hits += row.*(def.indicator);
      FrequencyRow agg;
      agg.name = def.name;
      agg.n = n;
      agg.reps = spec.reps;
      agg.frequency = static_cast<double>(hits) / static_cast<double>(spec.reps);
      agg.se = binomial_se(agg.frequency, spec.reps);
      agg.wall_ms = wall;
      result.aggregates.push_back(std::move(agg));
    }
    result.raw.insert(result.raw.end(), rows.begin(), rows.end());
  }
  result.wall_ms = ms_since(total_start);
  return result;
}

}  // namespace

const char* experiment_kind_name(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::giant_component: return "giant_component";
    case ExperimentKind::fragmentation: return "fragmentation";
    case ExperimentKind::critical_window: return "critical_window";
    case ExperimentKind::connectivity: return "connectivity";
    case ExperimentKind::degree_distribution: return "degree_distribution";
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) noexcept {
  for (const auto kind :
       {ExperimentKind::giant_component, ExperimentKind::fragmentation,
        ExperimentKind::critical_window, ExperimentKind::connectivity,
        ExperimentKind::degree_distribution}) {
    if (name == experiment_kind_name(kind)) return kind;
  }
  return std::nullopt;
}

ExperimentResult run_giant_component(const ExperimentSpec& spec) {
  check_kind(spec, ExperimentKind::giant_component);
  validate_common(spec);
  if (!(spec.base_lambda > 1.0)) {
    config_error("giant_component needs the supercritical regime lambda > 1, got " +
                 std::to_string(spec.base_lambda));
  }
  if (!(spec.nu > 0.5 && spec.nu < 1.0)) {
    config_error("nu must lie in (1/2, 1), got " + std::to_string(spec.nu));
  }
  const double zeta = survival_probability(spec.base_lambda);

  auto result = run_grid(
      spec,
      [&](std::int64_t n, const EdgeProbModel&) -> Measure {
        const double target = zeta * static_cast<double>(n);
        const double window = std::pow(static_cast<double>(n), spec.nu);
        return [target, window](const GraphSample& g) {
          ReplicationOutcome row;
          row.cmax = components(g).max_size;
          row.flag = std::abs(static_cast<double>(row.cmax) - target) > window ? 1 : 0;
          return row;
        };
      },
      {{"giant_component", &ReplicationOutcome::flag}});

  result.raw_columns = {"cmax", "deviates"};
  result.notes.push_back("zeta = " + fmt_g9(zeta) + " (lambda = " + fmt_g9(spec.base_lambda) + ")");
  return result;
}

ExperimentResult run_fragmentation(const ExperimentSpec& spec) {
  check_kind(spec, ExperimentKind::fragmentation);
  validate_common(spec);
  if (!(spec.base_lambda > 0.0 && spec.base_lambda < 1.0)) {
    config_error("fragmentation needs the subcritical regime lambda in (0,1), got " +
                 std::to_string(spec.base_lambda));
  }
  const double inv_rate = 1.0 / fragmentation_constant(spec.base_lambda);
  if (!(spec.a > 0.0) || !(spec.a < inv_rate) || !(spec.a_prime > inv_rate)) {
    config_error("fragmentation needs 0 < a < 1/I < a_prime with 1/I = " + fmt_g9(inv_rate) +
                 "; got a = " + std::to_string(spec.a) +
                 ", a_prime = " + std::to_string(spec.a_prime));
  }

  auto result = run_grid(
      spec,
      [&](std::int64_t n, const EdgeProbModel&) -> Measure {
        const double log_n = std::log(static_cast<double>(n));
        const double upper = spec.a_prime * log_n;
        const double lower = spec.a * log_n;
        return [upper, lower](const GraphSample& g) {
          ReplicationOutcome row;
          row.cmax = components(g).max_size;
          const auto cmax = static_cast<double>(row.cmax);
          row.flag = cmax >= upper ? 1 : 0;
          row.flag2 = cmax <= lower ? 1 : 0;
          return row;
        };
      },
      {{"fragmentation_above_a_prime", &ReplicationOutcome::flag},
       {"fragmentation_below_a", &ReplicationOutcome::flag2}});

  result.raw_columns = {"cmax", "above_a_prime", "below_a"};
  result.notes.push_back("log_n_scale 1/I = " + fmt_g9(inv_rate) +
                         " (lambda = " + fmt_g9(spec.base_lambda) + ")");
  return result;
}

ExperimentResult run_critical_window(const ExperimentSpec& spec) {
  check_kind(spec, ExperimentKind::critical_window);
  validate_common(spec);
  if (!(spec.a > 0.0 && spec.a < 1.0)) {
    config_error("critical_window needs a in (0,1), got " + std::to_string(spec.a));
  }

  auto result = run_grid(
      spec,
      [&](std::int64_t n, const EdgeProbModel&) -> Measure {
        const double scale = std::pow(static_cast<double>(n), 2.0 / 3.0);
        const double lower = spec.a * scale;
        const double upper = scale / spec.a;
        return [lower, upper](const GraphSample& g) {
          ReplicationOutcome row;
          row.cmax = components(g).max_size;
          const auto cmax = static_cast<double>(row.cmax);
          row.flag = (cmax >= lower && cmax <= upper) ? 1 : 0;
          return row;
        };
      },
      {{"critical_window", &ReplicationOutcome::flag}});

  result.raw_columns = {"cmax", "in_window"};
  return result;
}

ExperimentResult run_connectivity(const ExperimentSpec& spec) {
  check_kind(spec, ExperimentKind::connectivity);
  validate_common(spec);

  auto result = run_grid(
      spec,
      [&](std::int64_t, const EdgeProbModel&) -> Measure {
        return [](const GraphSample& g) {
          ReplicationOutcome row;
          const auto summary = components(g);
          row.cmax = summary.max_size;
          row.flag = summary.connected ? 1 : 0;
          return row;
        };
      },
      {{"connectivity", &ReplicationOutcome::flag}});

  result.raw_columns = {"cmax", "connected"};
  if (spec.connectivity_d) {
    for (const std::int64_t n : spec.n_grid) {
      const auto cond = connectivity_conditions(*spec.connectivity_d, n);
      result.notes.push_back("conditions n=" + std::to_string(n) +
                             ": sup_ratio_dev = " + fmt_g9(cond.sup_ratio_dev) +
                             ", sum_ratio = " + fmt_g9(cond.sum_ratio) + " (threshold 0.25)");
    }
  }
  return result;
}

ExperimentResult run_degree_distribution(const ExperimentSpec& spec) {
  check_kind(spec, ExperimentKind::degree_distribution);
  validate_common(spec);
  if (!(spec.base_lambda > 0.0)) {
    config_error("degree_distribution needs lambda > 0, got " + std::to_string(spec.base_lambda));
  }
  for (const std::int64_t n : spec.n_grid) {
    if (!(spec.eps.at(n) > 0.0)) {
      config_error("eps rule must be positive on the whole grid; fails at n = " +
                   std::to_string(n));
    }
  }
  const double lambda = spec.base_lambda;

  // Poisson reference masses are compared up to the larger of the highest
  // observed degree and the documented tail cutoff p_k < 1e-12.
  std::int32_t k_cut = static_cast<std::int32_t>(std::ceil(lambda));
  while (poisson_pmf(k_cut, lambda) >= 1e-12) ++k_cut;

  auto result = run_grid(
      spec,
      [&, lambda, k_cut](std::int64_t n, const EdgeProbModel&) -> Measure {
        const double eps_n = spec.eps.at(n);
        return [lambda, k_cut, eps_n, n](const GraphSample& g) {
          const auto hist = degree_histogram(g);
          const std::int32_t k_max = std::max(hist.counts.rbegin()->first, k_cut);
          double max_dev = 0.0;
          for (std::int32_t k = 0; k <= k_max; ++k) {
            const auto it = hist.counts.find(k);
            const double observed =
                it == hist.counts.end()
                    ? 0.0
                    : static_cast<double>(it->second) / static_cast<double>(n);
            max_dev = std::max(max_dev, std::abs(observed - poisson_pmf(k, lambda)));
          }
          ReplicationOutcome row;
          row.stat = max_dev;
          row.flag = max_dev > eps_n ? 1 : 0;
          return row;
        };
      },
      {{"degree_distribution", &ReplicationOutcome::flag}});

  result.raw_columns = {"max_deviation", "exceeds"};
  result.notes.push_back("poisson_tail_cutoff k = " + std::to_string(k_cut) +
                         " (lambda = " + fmt_g9(lambda) + ")");
  return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::giant_component: return run_giant_component(spec);
    case ExperimentKind::fragmentation: return run_fragmentation(spec);
    case ExperimentKind::critical_window: return run_critical_window(spec);
    case ExperimentKind::connectivity: return run_connectivity(spec);
    case ExperimentKind::degree_distribution: return run_degree_distribution(spec);
  }
  config_error("unknown experiment kind");
}

void write_raw_csv(const ExperimentResult& result, std::ostream& out) {
  out << "name,n,rep,seed_child";
  for (const auto& col : result.raw_columns) out << ',' << col;
  out << '\n';
  const char* name = experiment_kind_name(result.kind);
  for (const auto& row : result.raw) {
    out << name << ',' << row.n << ',' << row.rep << ',' << row.seed_child;
    switch (result.kind) {
      case ExperimentKind::giant_component:
      case ExperimentKind::critical_window:
      case ExperimentKind::connectivity:
        out << ',' << row.cmax << ',' << row.flag;
        break;
      case ExperimentKind::fragmentation:
        out << ',' << row.cmax << ',' << row.flag << ',' << row.flag2;
        break;
      case ExperimentKind::degree_distribution:
        out << ',' << fmt_g9(row.stat) << ',' << row.flag;
        break;
    }
    out << '\n';
  }
}

void write_aggregate_csv(const ExperimentResult& result, std::ostream& out) {
  out << "name,n,reps,frequency,stderr,wall_ms\n";
  for (const auto& row : result.aggregates) {
    out << row.name << ',' << row.n << ',' << row.reps << ',' << fmt_g9(row.frequency) << ','
        << fmt_g9(row.se) << ',' << fmt_g9(row.wall_ms) << '\n';
  }
}

}  // namespace ergraph
