#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ergraph/contiguity.hpp"
#include "ergraph/graph.hpp"
#include "ergraph/inference.hpp"
#include "ergraph/model.hpp"
#include "ergraph/rng.hpp"

using namespace ergraph;

namespace {

ModelPair uniform_pair(std::int64_t n, double p, double q) {
  const double dn = static_cast<double>(n);
  return ModelPair(EdgeProbModel(n, Homogeneous{p * dn}), EdgeProbModel(n, Homogeneous{q * dn}));
}

// All graphs on pair.n() <= 5 vertices with their P and Q masses, in the
// same lexicographic-mask order enumerate_exact uses.
struct MassTable {
  std::vector<GraphSample> graphs;
  std::vector<double> p_mass;
  std::vector<double> q_mass;
};

MassTable enumerate_masses(const ModelPair& pair) {
  const std::int64_t n = pair.n();
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  for (std::int32_t i = 1; i < n; ++i) {
    for (std::int32_t j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
  }

  MassTable table;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    GraphSample g;
    g.n = n;
    double p_mass = 1.0, q_mass = 1.0;
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      const double p = pair.base().prob_at(pairs[b].first, pairs[b].second);
      const double q = pair.perturbed().prob_at(pairs[b].first, pairs[b].second);
      if (mask & (1u << b)) {
        g.edges.push_back(pairs[b]);
        p_mass *= p;
        q_mass *= q;
      } else {
        p_mass *= 1.0 - p;
        q_mass *= 1.0 - q;
      }
    }
    table.graphs.push_back(std::move(g));
    table.p_mass.push_back(p_mass);
    table.q_mass.push_back(q_mass);
  }
  return table;
}

}  // namespace

TEST_SUITE("log_lr") {
  TEST_CASE("reference value on a fixed graph") {
    // n = 3, p = 0.2, q = 0.3, edges {1,2},{1,3}:
    // value = -(2 log(12/7) + 3 log(7/8)).
    const auto pair = uniform_pair(3, 0.2, 0.3);
    GraphSample g;
    g.n = 3;
    g.edges = {{1, 2}, {1, 3}};
    const auto lr = log_lr(pair, g);
    CHECK(std::abs(lr.k_sum - 1.07799300146537) < 1e-13);
    CHECK(std::abs(lr.l_sum - (-0.400594177873568)) < 1e-13);
    CHECK(std::abs(lr.value - (-0.677398823591806)) < 1e-13);
    CHECK(lr.value == doctest::Approx(-(lr.k_sum + lr.l_sum)).epsilon(1e-15));
  }

  TEST_CASE("uniform closed form equals the per-edge walk") {
    const auto pair = uniform_pair(6, 0.15, 0.4);
    const ModelPair walked(
        EdgeProbModel(6, Inhomogeneous{[](std::int32_t, std::int32_t) { return 0.9; }, 0.9}),
        EdgeProbModel(6, Inhomogeneous{[](std::int32_t, std::int32_t) { return 2.4; }, 2.4}));
    GraphSample g;
    g.n = 6;
    g.edges = {{1, 2}, {2, 5}, {3, 6}, {4, 5}};
    const auto a = log_lr(pair, g);
    const auto b = log_lr(walked, g);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
  }

  TEST_CASE("rejects mismatched sizes") {
    const auto pair = uniform_pair(4, 0.2, 0.3);
    GraphSample g;
    g.n = 5;
    CHECK_THROWS_AS(log_lr(pair, g), std::invalid_argument);
  }

  TEST_CASE("lr_test applies a strict threshold in a") {
    const auto pair = uniform_pair(3, 0.2, 0.3);
    GraphSample dense;
    dense.n = 3;
    dense.edges = {{1, 2}, {1, 3}, {2, 3}};
    GraphSample empty;
    empty.n = 3;

    CHECK(lr_test(pair, dense, 1.0));        // log_lr < 0: q favored
    CHECK_FALSE(lr_test(pair, empty, 1.0));  // log_lr > 0: p favored
    // A small enough a accepts everything: threshold -log(a) grows.
    CHECK(lr_test(pair, empty, 0.01));
    CHECK_THROWS_AS(lr_test(pair, dense, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(lr_test(pair, dense, -1.0), std::invalid_argument);
  }
}

TEST_SUITE("enumeration") {
  TEST_CASE("E_Q[dP/dQ] = 1 exactly") {
    Rng rng(606);
    for (int trial = 0; trial < 250; ++trial) {
      const std::int64_t n = 2 + static_cast<std::int64_t>(rng.uniform() * 3);
      const double p = 0.02 + 0.9 * rng.uniform();
      const double q = 0.02 + 0.9 * rng.uniform();
      const auto pair = uniform_pair(n, p, q);

      const auto table = enumerate_masses(pair);
      double total = 0.0;
      for (std::size_t g = 0; g < table.graphs.size(); ++g) {
        total += table.q_mass[g] * std::exp(log_lr(pair, table.graphs[g]).value);
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-11));
    }
  }

  TEST_CASE("closed forms match exhaustive enumeration at n = 3") {
    const auto pair = uniform_pair(3, 0.2, 0.3);
    const auto exact = enumerate_exact(pair, [&](const GraphSample& g) {
      return lr_test(pair, g, 1.0);
    });
    CHECK(exact.kl == doctest::Approx(kl_divergence(pair)).epsilon(1e-13));
    CHECK(exact.affinity == doctest::Approx(hellinger_affinity(pair)).epsilon(1e-13));

    const auto region = lr_acceptance_probs(pair, 1.0);
    CHECK(exact.p_event == doctest::Approx(region.p_prob).epsilon(1e-13));
    CHECK(exact.q_event == doctest::Approx(region.q_prob).epsilon(1e-13));

    // Hand values: the region is {at least one edge}.
    CHECK(region.p_prob == doctest::Approx(1.0 - 0.512).epsilon(1e-13));
    CHECK(region.q_prob == doctest::Approx(1.0 - 0.343).epsilon(1e-13));
  }

  TEST_CASE("closed forms match exhaustive enumeration at n = 4") {
    const auto pair = uniform_pair(4, 0.15, 0.35);
    const auto exact = enumerate_exact(pair, [&](const GraphSample& g) {
      return lr_test(pair, g, 0.7);
    });
    CHECK(exact.kl == doctest::Approx(kl_divergence(pair)).epsilon(1e-12));
    CHECK(exact.affinity == doctest::Approx(hellinger_affinity(pair)).epsilon(1e-12));

    const auto region = lr_acceptance_probs(pair, 0.7);
    CHECK(exact.p_event == doctest::Approx(region.p_prob).epsilon(1e-12));
    CHECK(exact.q_event == doctest::Approx(region.q_prob).epsilon(1e-12));
  }

  TEST_CASE("rejects n above the enumeration cap and degenerate probabilities") {
    CHECK_THROWS_AS(enumerate_exact(uniform_pair(6, 0.1, 0.2),
                                    [](const GraphSample&) { return true; }),
                    std::invalid_argument);
    const ModelPair degenerate(EdgeProbModel(3, Homogeneous{0.0}),
                               EdgeProbModel(3, Homogeneous{0.9}));
    CHECK_THROWS_AS(enumerate_exact(degenerate, [](const GraphSample&) { return true; }),
                    std::domain_error);
  }

  TEST_CASE("region probabilities need a uniform pair") {
    const ModelPair mixed(
        EdgeProbModel(4, Homogeneous{1.0}),
        EdgeProbModel(4, Inhomogeneous{[](std::int32_t, std::int32_t) { return 1.5; }, 1.5}));
    CHECK_THROWS_AS(lr_acceptance_probs(mixed, 1.0), std::logic_error);
  }
}

TEST_SUITE("monte_carlo") {
  TEST_CASE("weighted risk is reproducible and internally consistent") {
    const auto pair = uniform_pair(40, 0.05, 0.1);
    const auto a = weighted_risk_mc(pair, 1.0, 500, 13);
    const auto b = weighted_risk_mc(pair, 1.0, 500, 13);
    CHECK(a.type1_weighted == b.type1_weighted);
    CHECK(a.type2 == b.type2);
    CHECK(a.total == a.type1_weighted + a.type2);
    CHECK(a.reps == 500);
    CHECK(a.a == 1.0);
    CHECK(a.total_se <= a.type1_weighted_se + a.type2_se + 1e-15);
  }

  TEST_CASE("weighted risk matches the closed-form expectation") {
    const auto pair = uniform_pair(40, 0.05, 0.1);
    const double a = 1.0;
    const auto region = lr_acceptance_probs(pair, a);
    const double expected = region.p_prob / a + (1.0 - region.q_prob);

    const auto report = weighted_risk_mc(pair, a, 4000, 99);
    CHECK(std::abs(report.total - expected) < 5.0 * report.total_se + 1e-9);
  }

  TEST_CASE("risk validation") {
    const auto pair = uniform_pair(10, 0.1, 0.2);
    CHECK_THROWS_AS(weighted_risk_mc(pair, 0.0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(weighted_risk_mc(pair, 0.5, 0, 1), std::invalid_argument);
  }

  TEST_CASE("remote-contiguity event frequency is monotone in delta") {
    const auto pair = uniform_pair(30, 0.08, 0.16);
    const std::uint64_t seed = 771;
    const double loose = rc_condition_ii_mc(pair, 0.5, 0.9, 400, seed);
    const double tight = rc_condition_ii_mc(pair, 0.5, 0.1, 400, seed);
    const double tighter = rc_condition_ii_mc(pair, 0.5, 0.01, 400, seed);
    CHECK(loose >= tight);
    CHECK(tight >= tighter);
    CHECK(loose <= 1.0);
    CHECK(tighter >= 0.0);
    CHECK_THROWS_AS(rc_condition_ii_mc(pair, 0.5, 0.0, 10, 1), std::invalid_argument);
  }

  TEST_CASE("clt statistic is deterministic in the seed and plausibly normal") {
    const ModelPair pair(EdgeProbModel(500, Homogeneous{2.0}),
                         EdgeProbModel(500, Homogeneous{2.3}));
    const double ks1 = clt_check(pair, 300, 4001);
    const double ks2 = clt_check(pair, 300, 4001);
    CHECK(ks1 == ks2);
    CHECK(ks1 > 0.0);
    CHECK(ks1 < 0.15);
  }

  TEST_CASE("clt validation") {
    const ModelPair pair(EdgeProbModel(500, Homogeneous{2.0}),
                         EdgeProbModel(500, Homogeneous{2.3}));
    CHECK_THROWS_AS(clt_check(pair, 99, 1), std::invalid_argument);
    CHECK_THROWS_AS(clt_check(uniform_pair(10, 0.2, 0.2), 200, 1), std::domain_error);
  }
}
