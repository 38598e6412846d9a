// ergraph: command-line front end for the ER-graph contiguity library.
// Subcommands wrap the public operations one-to-one; all numerical logic
// lives in the library. Exit codes: 0 success, 1 validation/usage error,
// 2 runtime error.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ergraph/config.hpp"
#include "ergraph/contiguity.hpp"
#include "ergraph/experiments.hpp"
#include "ergraph/format.hpp"
#include "ergraph/graph.hpp"
#include "ergraph/inference.hpp"
#include "ergraph/regimes.hpp"
#include "ergraph/sampler.hpp"

namespace {

using namespace ergraph;

void print_kv(const std::string& key, double value) {
  std::cout << key << " = " << fmt_g9(value) << '\n';
}

// Shared model-selection flags (sample subcommand and friends).
struct ModelFlags {
  ModelOptions options;

  void attach(CLI::App* cmd) {
    cmd->add_option("--kind", options.kind,
                    "model family: homogeneous, supercritical_perturbed, critical, log_growth, "
                    "complete, signed_perturbation, connectivity_example")
        ->capture_default_str();
    cmd->add_option("--lambda", options.lambda, "mean degree (homogeneous-style kinds)");
    cmd->add_option("--delta", options.delta, "perturbation size exponent");
    cmd->add_option("--theta", options.theta, "critical-window offset");
    cmd->add_option("--coeff", options.coeff, "log-growth coefficient");
    cmd->add_option("--d", options.d, "connectivity configuration level");
    cmd->add_option("--eps", options.eps, "signed-perturbation budget threshold");
    cmd->add_option("--eps-rule", options.eps_rule, "eps schedule: fixed or inv_sqrt")
        ->capture_default_str();
  }
};

std::vector<double> parse_rate_list(const std::string& csv) {
  std::vector<double> rates;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in rate list");
    rates.push_back(std::stod(item));
  }
  return rates;
}

// Perturbed mean degree at one n: either fixed, or the supercritical
// schedule sized by delta.
double perturbed_rate_at(std::int64_t n, double lambda, std::optional<double> perturbed_lambda,
                         std::optional<double> delta) {
  if (perturbed_lambda.has_value() == delta.has_value()) {
    throw std::invalid_argument("give exactly one of --perturbed-lambda and --delta");
  }
  if (perturbed_lambda) return *perturbed_lambda;
  return supercritical_perturbed_family(lambda, *delta)(n).rate();
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Remote-contiguity diagnostics and Monte Carlo harness for ER random graphs"};
  app.require_subcommand(1);
  std::function<int()> action;

  // ---- zeta ------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("zeta", "survival probability of a Poisson branching process");
    auto lambda = std::make_shared<double>(0.0);
    auto tol = std::make_shared<double>(1e-12);
    cmd->add_option("--lambda", *lambda, "mean degree")->required();
    cmd->add_option("--tol", *tol, "bisection tolerance")->capture_default_str();
    cmd->callback([&action, lambda, tol] {
      action = [lambda, tol] {
        std::cout << fmt_g9(survival_probability(*lambda, *tol)) << '\n';
        return 0;
      };
    });
  }

  // ---- regime-constants --------------------------------------------------
  {
    auto* cmd = app.add_subcommand("regime-constants",
                                   "survival probability and cluster decay rate at one lambda");
    auto lambda = std::make_shared<double>(0.0);
    cmd->add_option("--lambda", *lambda, "mean degree")->required();
    cmd->callback([&action, lambda] {
      action = [lambda] {
        const auto rc = regime_constants(*lambda);
        print_kv("lambda", rc.lambda);
        print_kv("zeta", rc.zeta);
        print_kv("decay_rate", rc.decay_rate);
        return 0;
      };
    });
  }

  // ---- sample ------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("sample", "draw one graph and emit its edge list");
    auto n = std::make_shared<std::int64_t>(0);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto out_path = std::make_shared<std::string>();
    auto flags = std::make_shared<ModelFlags>();
    cmd->add_option("--n", *n, "vertex count")->required();
    cmd->add_option("--seed", *seed, "RNG seed")->required();
    cmd->add_option("--out", *out_path, "output file (default stdout)");
    flags->attach(cmd);
    cmd->callback([&action, n, seed, out_path, flags] {
      action = [n, seed, out_path, flags] {
        const auto built = build_model_family(flags->options);
        const GraphSample g = sample(built.family(*n), *seed);
        if (out_path->empty()) {
          write_edge_list(g, std::cout);
        } else {
          std::ofstream out(*out_path);
          if (!out) throw std::runtime_error("cannot open output file: " + *out_path);
          write_edge_list(g, out);
        }
        return 0;
      };
    });
  }

  // ---- analyze -------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("analyze", "components and degrees of an edge-list file");
    auto in_path = std::make_shared<std::string>();
    cmd->add_option("--in", *in_path, "edge-list file ('-' for stdin)")->required();
    cmd->callback([&action, in_path] {
      action = [in_path] {
        GraphSample g;
        if (*in_path == "-") {
          g = read_edge_list(std::cin);
        } else {
          std::ifstream in(*in_path);
          if (!in) throw std::invalid_argument("cannot open input file: " + *in_path);
          g = read_edge_list(in);
        }
        const auto summary = components(g);
        std::cout << "n = " << g.n << '\n';
        std::cout << "m = " << g.edge_count() << '\n';
        std::cout << "components = " << summary.sizes.size() << '\n';
        std::cout << "max_component = " << summary.max_size << '\n';
        std::cout << "connected = " << (summary.connected ? 1 : 0) << '\n';
        std::cout << "degree,count\n";
        for (const auto& [degree, count] : degree_histogram(g).counts) {
          std::cout << degree << ',' << count << '\n';
        }
        return 0;
      };
    });
  }

  // ---- contiguity-report -----------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "contiguity-report", "KL, Lindeberg normalizer, perturbation rates, Hellinger affinity");
    auto n = std::make_shared<std::int64_t>(0);
    auto lambda = std::make_shared<double>(0.0);
    auto perturbed_lambda = std::make_shared<std::optional<double>>();
    auto delta = std::make_shared<std::optional<double>>();
    auto theta = std::make_shared<std::optional<double>>();
    auto rates_csv = std::make_shared<std::string>();
    auto as_csv = std::make_shared<bool>(false);
    cmd->add_option("--n", *n, "vertex count")->required();
    cmd->add_option("--lambda", *lambda, "base mean degree")->required();
    auto* opt_pl =
        cmd->add_option("--perturbed-lambda", *perturbed_lambda, "perturbed mean degree");
    auto* opt_delta = cmd->add_option(
        "--delta", *delta, "use the supercritical schedule at this delta for the perturbed side");
    auto* opt_theta =
        cmd->add_option("--theta", *theta, "use the critical schedule at this theta");
    opt_pl->excludes(opt_delta)->excludes(opt_theta);
    opt_delta->excludes(opt_theta);
    cmd->add_option("--rates", *rates_csv, "comma list of rates a for the delta margins");
    cmd->add_flag("--csv", *as_csv, "emit one CSV row instead of the key = value block");
    cmd->callback([&action, n, lambda, perturbed_lambda, delta, theta, rates_csv, as_csv] {
      action = [n, lambda, perturbed_lambda, delta, theta, rates_csv, as_csv] {
        double rate;
        if (*theta) {
          if (*perturbed_lambda || *delta) {
            throw std::invalid_argument("give exactly one perturbed-side option");
          }
          rate = critical_schedule(**theta, *n);
        } else {
          rate = perturbed_rate_at(*n, *lambda, *perturbed_lambda, *delta);
        }
        const ModelPair pair{EdgeProbModel(*n, Homogeneous{*lambda}),
                             EdgeProbModel(*n, Homogeneous{rate})};
        std::vector<double> rates;
        if (!rates_csv->empty()) rates = parse_rate_list(*rates_csv);
        const auto report = contiguity_report(pair, rates);
        if (*as_csv) {
          std::cout << report_csv_header() << '\n' << report_csv_row(report) << '\n';
        } else {
          std::cout << report_kv_block(report);
        }
        return 0;
      };
    });
  }

  // ---- rate-margin -------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "rate-margin", "margin log(a_n) + R_n along an n grid, with trend classification");
    auto lambda = std::make_shared<double>(0.0);
    auto delta = std::make_shared<double>(0.0);
    auto grid_csv = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>();
    auto exponent = std::make_shared<double>(0.0);
    cmd->add_option("--lambda", *lambda, "base mean degree")->required();
    cmd->add_option("--delta", *delta, "supercritical schedule delta")->required();
    cmd->add_option("--grid", *grid_csv, "comma list of n values")->required();
    cmd->add_option("--a-mode", *mode, "rate schedule: poly, exp2r, or exphalfr")->required();
    cmd->add_option("--a-exponent", *exponent, "exponent for --a-mode poly: a_n = n^-exponent");
    cmd->callback([&action, lambda, delta, grid_csv, mode, exponent] {
      action = [lambda, delta, grid_csv, mode, exponent] {
        std::vector<std::int64_t> grid;
        {
          std::stringstream ss(*grid_csv);
          std::string item;
          while (std::getline(ss, item, ',')) grid.push_back(std::stoll(item));
        }
        const double l = *lambda;
        const auto perturbed = supercritical_perturbed_family(l, *delta);
        const PairFamily family = [l, perturbed](std::int64_t n) {
          return ModelPair(EdgeProbModel(n, Homogeneous{l}), perturbed(n));
        };

        RateSchedule a_of_n;
        if (*mode == "poly") {
          if (!(*exponent > 0.0)) {
            throw std::invalid_argument("--a-mode poly needs --a-exponent > 0");
          }
          const double dp = *exponent;
          a_of_n = [dp](std::int64_t n) { return std::pow(static_cast<double>(n), -dp); };
        } else if (*mode == "exp2r" || *mode == "exphalfr") {
          const double factor = (*mode == "exp2r") ? 2.0 : 0.5;
          a_of_n = [l, perturbed, factor](std::int64_t n) {
            const double rate = homogeneous_rate(l, perturbed(n).rate(), n);
            return std::exp(-factor * rate);
          };
        } else {
          throw std::invalid_argument("unknown --a-mode '" + *mode +
                                      "' (use poly, exp2r, or exphalfr)");
        }

        const auto curve = rate_margin_curve(family, a_of_n, grid);
        std::cout << "n,margin,normalized_margin\n";
        for (std::size_t i = 0; i < curve.grid.size(); ++i) {
          std::cout << curve.grid[i] << ',' << fmt_g9(curve.margins[i]) << ','
                    << fmt_g9(curve.normalized_margins[i]) << '\n';
        }
        std::cout << "classification = " << trend_name(curve.classification) << '\n';
        return 0;
      };
    });
  }

  // ---- risk ---------------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "risk", "Monte Carlo weighted testing risk of the likelihood-ratio test");
    auto n = std::make_shared<std::int64_t>(0);
    auto lambda = std::make_shared<double>(0.0);
    auto perturbed_lambda = std::make_shared<std::optional<double>>();
    auto delta = std::make_shared<std::optional<double>>();
    auto a = std::make_shared<double>(0.0);
    auto reps = std::make_shared<std::int64_t>(0);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto rc_delta = std::make_shared<std::optional<double>>();
    cmd->add_option("--n", *n, "vertex count")->required();
    cmd->add_option("--lambda", *lambda, "base mean degree")->required();
    auto* opt_pl =
        cmd->add_option("--perturbed-lambda", *perturbed_lambda, "perturbed mean degree");
    auto* opt_delta =
        cmd->add_option("--delta", *delta, "supercritical schedule delta for the perturbed side");
    opt_pl->excludes(opt_delta);
    cmd->add_option("--a", *a, "rate a weighting the type-I error")->required();
    cmd->add_option("--reps", *reps, "replications per side")->required();
    cmd->add_option("--seed", *seed, "RNG seed")->required();
    cmd->add_option("--rc-delta", *rc_delta,
                    "also report the frequency of {log_lr < log(delta * a)} under Q");
    cmd->callback([&action, n, lambda, perturbed_lambda, delta, a, reps, seed, rc_delta] {
      action = [n, lambda, perturbed_lambda, delta, a, reps, seed, rc_delta] {
        const double rate = perturbed_rate_at(*n, *lambda, *perturbed_lambda, *delta);
        const ModelPair pair{EdgeProbModel(*n, Homogeneous{*lambda}),
                             EdgeProbModel(*n, Homogeneous{rate})};
        const auto report = weighted_risk_mc(pair, *a, *reps, *seed);
        print_kv("a", report.a);
        std::cout << "reps = " << report.reps << '\n';
        print_kv("type1_weighted", report.type1_weighted);
        print_kv("type1_weighted_se", report.type1_weighted_se);
        print_kv("type2", report.type2);
        print_kv("type2_se", report.type2_se);
        print_kv("total", report.total);
        print_kv("total_se", report.total_se);
        print_kv("hellinger_bound", hellinger_affinity(pair) / std::sqrt(*a));
        if (*rc_delta) {
          print_kv("rc_condition_ii", rc_condition_ii_mc(pair, *a, **rc_delta, *reps, *seed));
        }
        return 0;
      };
    });
  }

  // ---- clt-check -------------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "clt-check", "Kolmogorov-Smirnov distance of normalized edge sums to the normal");
    auto n = std::make_shared<std::int64_t>(0);
    auto lambda = std::make_shared<double>(0.0);
    auto perturbed_lambda = std::make_shared<std::optional<double>>();
    auto delta = std::make_shared<std::optional<double>>();
    auto reps = std::make_shared<std::int64_t>(0);
    auto seed = std::make_shared<std::uint64_t>(0);
    cmd->add_option("--n", *n, "vertex count")->required();
    cmd->add_option("--lambda", *lambda, "base mean degree")->required();
    auto* opt_pl =
        cmd->add_option("--perturbed-lambda", *perturbed_lambda, "perturbed mean degree");
    auto* opt_delta =
        cmd->add_option("--delta", *delta, "supercritical schedule delta for the perturbed side");
    opt_pl->excludes(opt_delta);
    cmd->add_option("--reps", *reps, "number of replicated sums (>= 100)")->required();
    cmd->add_option("--seed", *seed, "RNG seed")->required();
    cmd->callback([&action, n, lambda, perturbed_lambda, delta, reps, seed] {
      action = [n, lambda, perturbed_lambda, delta, reps, seed] {
        const double rate = perturbed_rate_at(*n, *lambda, *perturbed_lambda, *delta);
        const ModelPair pair{EdgeProbModel(*n, Homogeneous{*lambda}),
                             EdgeProbModel(*n, Homogeneous{rate})};
        print_kv("ks", clt_check(pair, *reps, *seed));
        return 0;
      };
    });
  }

  // ---- oracle -----------------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "oracle", "cross-check closed forms against exhaustive enumeration (n <= 5)");
    auto n = std::make_shared<std::int64_t>(0);
    auto p = std::make_shared<double>(0.0);
    auto q = std::make_shared<double>(0.0);
    auto a = std::make_shared<double>(1.0);
    cmd->add_option("--n", *n, "vertex count (<= 5)")->required();
    cmd->add_option("--p", *p, "base edge probability")->required();
    cmd->add_option("--q", *q, "perturbed edge probability")->required();
    cmd->add_option("--a", *a, "rate for the test-region probabilities")->capture_default_str();
    cmd->callback([&action, n, p, q, a] {
      action = [n, p, q, a] {
        const double dn = static_cast<double>(*n);
        const ModelPair pair{EdgeProbModel(*n, Homogeneous{*p * dn}),
                             EdgeProbModel(*n, Homogeneous{*q * dn})};
        const double rate = *a;
        const auto enumerated = enumerate_exact(
            pair, [&pair, rate](const GraphSample& g) { return lr_test(pair, g, rate); });
        const double kl_closed = kl_divergence(pair);
        const double affinity_closed = hellinger_affinity(pair);
        const auto region_closed = lr_acceptance_probs(pair, rate);

        const double tol = 1e-12;
        bool pass = true;
        const auto compare = [&pass, tol](const std::string& name, double closed,
                                          double enumerated_value) {
          print_kv(name + "_closed_form", closed);
          print_kv(name + "_enumerated", enumerated_value);
          pass = pass && std::abs(closed - enumerated_value) <= tol;
        };
        compare("kl", kl_closed, enumerated.kl);
        compare("affinity", affinity_closed, enumerated.affinity);
        compare("region_p", region_closed.p_prob, enumerated.p_event);
        compare("region_q", region_closed.q_prob, enumerated.q_event);
        std::cout << "oracle = " << (pass ? "PASS" : "FAIL") << '\n';
        if (!pass) throw std::runtime_error("enumeration disagrees with closed forms");
        return 0;
      };
    });
  }

  // ---- experiment ----------------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("experiment", "run a Monte Carlo regime experiment");
    auto name = std::make_shared<std::string>();
    auto config_path = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    auto raw_path = std::make_shared<std::string>();
    auto threads = std::make_shared<std::optional<int>>();
    cmd->add_option("name", *name,
                    "giant_component, fragmentation, critical_window, connectivity, or "
                    "degree_distribution")
        ->required();
    cmd->add_option("--config", *config_path, "experiment config file")->required();
    cmd->add_option("--out", *out_path, "aggregate CSV output path")->required();
    cmd->add_option("--raw-out", *raw_path, "also write the per-replication CSV here");
    cmd->add_option("--threads", *threads, "override the config thread count");
    cmd->callback([&action, name, config_path, out_path, raw_path, threads] {
      action = [name, config_path, out_path, raw_path, threads] {
        auto spec = load_experiment_spec(*name, ConfigFile::parse_file(*config_path));
        if (*threads) spec.threads = **threads;
        const auto result = run_experiment(spec);

        {
          std::ofstream out(*out_path);
          if (!out) throw std::runtime_error("cannot open output file: " + *out_path);
          write_aggregate_csv(result, out);
        }
        if (!raw_path->empty()) {
          std::ofstream out(*raw_path);
          if (!out) throw std::runtime_error("cannot open output file: " + *raw_path);
          write_raw_csv(result, out);
        }

        std::cout << "experiment = " << experiment_kind_name(result.kind) << '\n';
        std::cout << "seed = " << result.seed << '\n';
        for (const auto& note : result.notes) std::cout << "note: " << note << '\n';
        for (const auto& row : result.aggregates) {
          std::cout << row.name << " n=" << row.n << " frequency=" << fmt_g9(row.frequency)
                    << " se=" << fmt_g9(row.se) << '\n';
        }
        print_kv("wall_ms", result.wall_ms);
        return 0;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    return action();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
