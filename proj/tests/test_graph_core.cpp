#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ergraph/disjoint_set.hpp"
#include "ergraph/graph.hpp"
#include "ergraph/model.hpp"
#include "ergraph/numeric.hpp"
#include "ergraph/rng.hpp"
#include "ergraph/sampler.hpp"

using namespace ergraph;

TEST_SUITE("rng") {
  TEST_CASE("same seed reproduces the stream") {
    Rng a(12345), b(12345);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  }

  TEST_CASE("different seeds and child keys give different streams") {
    Rng a(1), b(2);
    bool differ = false;
    for (int i = 0; i < 8 && !differ; ++i) differ = a.next() != b.next();
    CHECK(differ);

    CHECK(Rng::derive(7, 0) != Rng::derive(7, 1));
    CHECK(Rng::derive(7, 0) != Rng::derive(8, 0));
  }

  TEST_CASE("uniform lies in [0,1)") {
    Rng rng(99);
    for (int i = 0; i < 10000; ++i) {
      const double u = rng.uniform();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
    }
  }

  TEST_CASE("uniform mean is near one half") {
    Rng rng(4242);
    double sum = 0.0;
    const int reps = 100000;
    for (int i = 0; i < reps; ++i) sum += rng.uniform();
    // sd of the mean is 1/sqrt(12*reps) ~ 0.0009; allow 5 sigma.
    CHECK(std::abs(sum / reps - 0.5) < 0.005);
  }
}

TEST_SUITE("disjoint_set") {
  TEST_CASE("union and component counts") {
    DisjointSet ds(6);
    CHECK(ds.components() == 6);
    ds.unite(0, 1);
    ds.unite(1, 2);
    ds.unite(3, 4);
    ds.unite(0, 2);  // already joined, no effect
    CHECK(ds.components() == 3);
    CHECK(ds.find(0) == ds.find(2));
    CHECK(ds.find(3) == ds.find(4));
    CHECK(ds.find(0) != ds.find(3));
    CHECK(ds.size_of(1) == 3);
    CHECK(ds.size_of(5) == 1);

    auto sizes = ds.component_sizes();
    std::multiset<std::int64_t> bag(sizes.begin(), sizes.end());
    CHECK(bag == std::multiset<std::int64_t>{1, 2, 3});
  }
}

TEST_SUITE("numeric") {
  TEST_CASE("pair_count is exact for small and large n") {
    CHECK(pair_count(1) == 0);
    CHECK(pair_count(2) == 1);
    CHECK(pair_count(3) == 3);
    CHECK(pair_count(10) == 45);
    CHECK(pair_count(3000000) == 3000000LL * 2999999LL / 2);
  }

  TEST_CASE("compensated sum beats naive summation") {
    CompensatedSum sum;
    sum.add(1e16);
    for (int i = 0; i < 10; ++i) sum.add(1.0);
    sum.add(-1e16);
    CHECK(sum.value() == 10.0);
  }

  TEST_CASE("normal cdf reference points") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-9));
    CHECK(normal_cdf(-1.959963984540054) == doctest::Approx(0.025).epsilon(1e-9));
  }

  TEST_CASE("poisson pmf sums to one and matches hand values") {
    CHECK(poisson_pmf(0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(poisson_pmf(2, 3.0) == doctest::Approx(4.5 * std::exp(-3.0)).epsilon(1e-12));
    CHECK(poisson_pmf(-1, 2.0) == 0.0);
    CHECK(poisson_pmf(0, 0.0) == 1.0);
    CHECK(poisson_pmf(3, 0.0) == 0.0);

    double total = 0.0;
    for (int k = 0; k < 80; ++k) total += poisson_pmf(k, 7.5);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_SUITE("model") {
  TEST_CASE("homogeneous rates and probabilities") {
    EdgeProbModel m(100, Homogeneous{2.5});
    CHECK(m.n() == 100);
    CHECK(m.uniform());
    CHECK(m.rate() == 2.5);
    CHECK(m.prob() == doctest::Approx(0.025).epsilon(1e-15));
    CHECK(m.rate_at(1, 2) == 2.5);
    CHECK(m.rate_bound() == 2.5);
  }

  TEST_CASE("rates outside [0, n] are rejected") {
    CHECK_THROWS_AS(EdgeProbModel(10, Homogeneous{-0.1}), std::invalid_argument);
    CHECK_THROWS_AS(EdgeProbModel(10, Homogeneous{10.5}), std::invalid_argument);
    CHECK_THROWS_AS(EdgeProbModel(10, Homogeneous{std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(EdgeProbModel(0, Homogeneous{0.0}), std::invalid_argument);
    CHECK_NOTHROW(EdgeProbModel(10, Homogeneous{10.0}));  // probability exactly 1
    CHECK_NOTHROW(EdgeProbModel(10, Homogeneous{0.0}));   // probability exactly 0
  }

  TEST_CASE("schedule collapses to its value at n") {
    EdgeProbModel m(100, HomogeneousSchedule{[](std::int64_t n) {
      return std::log(static_cast<double>(n));
    }});
    CHECK(m.uniform());
    CHECK(m.rate() == doctest::Approx(std::log(100.0)).epsilon(1e-15));
  }

  TEST_CASE("inhomogeneous pair lookup and validation") {
    EdgeProbModel m(4, Inhomogeneous{[](std::int32_t i, std::int32_t j) {
      return 0.5 * static_cast<double>(i + j);
    }, 3.5});
    CHECK_FALSE(m.uniform());
    CHECK(m.rate_at(1, 2) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(m.rate_at(3, 4) == doctest::Approx(3.5).epsilon(1e-15));
    CHECK(m.rate_bound() == 3.5);
    CHECK_THROWS_AS(m.rate(), std::logic_error);
    CHECK_THROWS_AS(m.rate_at(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(m.rate_at(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(m.rate_at(1, 5), std::invalid_argument);
  }

  TEST_CASE("rates above the declared bound are a domain error") {
    EdgeProbModel m(4, Inhomogeneous{[](std::int32_t, std::int32_t) { return 2.0; }, 1.0});
    CHECK_THROWS_AS(m.rate_at(1, 2), std::domain_error);
  }
}

TEST_SUITE("sampler") {
  TEST_CASE("deterministic in the seed") {
    EdgeProbModel m(300, Homogeneous{4.0});
    const auto a = sample(m, 77);
    const auto b = sample(m, 77);
    const auto c = sample(m, 78);
    CHECK(a.edges == b.edges);
    CHECK(a.seed == 77);
    CHECK(a.edges != c.edges);
  }

  TEST_CASE("degenerate probabilities") {
    const auto empty = sample(EdgeProbModel(50, Homogeneous{0.0}), 1);
    CHECK(empty.edge_count() == 0);

    const auto full = sample(EdgeProbModel(50, Homogeneous{50.0}), 1);
    CHECK(full.edge_count() == pair_count(50));
    CHECK_NOTHROW(full.validate());
  }

  TEST_CASE("samples satisfy the graph invariants") {
    const auto g = sample(EdgeProbModel(500, Homogeneous{3.0}), 2024);
    CHECK_NOTHROW(g.validate());
  }

  TEST_CASE("edge count concentrates on C(n,2) p") {
    const std::int64_t n = 2000;
    EdgeProbModel m(n, Homogeneous{3.0});
    const double p = m.prob();
    const double mean = static_cast<double>(pair_count(n)) * p;
    const double sd = std::sqrt(static_cast<double>(pair_count(n)) * p * (1.0 - p));

    double total = 0.0;
    const int reps = 50;
    for (int r = 0; r < reps; ++r) {
      total += static_cast<double>(sample(m, Rng::derive(555, r)).edge_count());
    }
    const double se = sd / std::sqrt(static_cast<double>(reps));
    CHECK(std::abs(total / reps - mean) < 5.0 * se);
  }

  TEST_CASE("thinning reproduces per-pair rates exactly at the extremes") {
    // One pair at the bound (always kept), the rest at rate zero.
    EdgeProbModel m(3, Inhomogeneous{[](std::int32_t i, std::int32_t j) {
      return (i == 1 && j == 2) ? 3.0 : 0.0;
    }, 3.0});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto g = sample(m, seed);
      REQUIRE(g.edge_count() == 1);
      CHECK(g.edges.front() == std::pair<std::int32_t, std::int32_t>{1, 2});
    }
  }

  TEST_CASE("constant-rate thinning matches the homogeneous mean") {
    const std::int64_t n = 400;
    EdgeProbModel inhom(n, Inhomogeneous{[](std::int32_t, std::int32_t) { return 2.0; }, 4.0});
    const double mean = static_cast<double>(pair_count(n)) * 2.0 / static_cast<double>(n);
    const double sd = std::sqrt(mean * (1.0 - 2.0 / static_cast<double>(n)));

    double total = 0.0;
    const int reps = 60;
    for (int r = 0; r < reps; ++r) {
      const auto g = sample(inhom, Rng::derive(31337, r));
      CHECK_NOTHROW(g.validate());
      total += static_cast<double>(g.edge_count());
    }
    const double se = sd / std::sqrt(static_cast<double>(reps));
    CHECK(std::abs(total / reps - mean) < 5.0 * se);
  }
}

TEST_SUITE("graph") {
  GraphSample hand_graph() {
    GraphSample g;
    g.n = 6;
    g.edges = {{1, 2}, {2, 3}, {4, 5}};
    return g;
  }

  TEST_CASE("components of a hand-built graph") {
    const auto summary = components(hand_graph());
    CHECK(summary.sizes == std::vector<std::int64_t>{3, 2, 1});
    CHECK(summary.max_size == 3);
    CHECK_FALSE(summary.connected);

    GraphSample path;
    path.n = 4;
    path.edges = {{1, 2}, {2, 3}, {3, 4}};
    CHECK(components(path).connected);
  }

  TEST_CASE("degree histogram counts every vertex") {
    const auto hist = degree_histogram(hand_graph());
    CHECK(hist.counts.at(0) == 1);
    CHECK(hist.counts.at(1) == 4);
    CHECK(hist.counts.at(2) == 1);

    std::int64_t vertices = 0, degree_total = 0;
    for (const auto& [d, c] : hist.counts) {
      vertices += c;
      degree_total += static_cast<std::int64_t>(d) * c;
    }
    CHECK(vertices == 6);
    CHECK(degree_total == 2 * hand_graph().edge_count());
  }

  TEST_CASE("validate rejects malformed edge sets") {
    GraphSample g;
    g.n = 3;
    g.edges = {{1, 2}, {1, 2}};
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);

    g.edges = {{2, 1}};
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);

    g.edges = {{1, 4}};
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);

    g.edges = {{1, 3}, {1, 2}};  // unsorted
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  }

  TEST_CASE("edge list roundtrip") {
    const auto g = sample(EdgeProbModel(120, Homogeneous{2.0}), 9001);
    std::stringstream buffer;
    write_edge_list(g, buffer);
    const auto back = read_edge_list(buffer);
    CHECK(back.n == g.n);
    CHECK(back.edges == g.edges);
  }

  TEST_CASE("reader normalizes edge order") {
    std::istringstream in("4 2\n3 4\n1 2\n");
    const auto g = read_edge_list(in);
    CHECK(g.edges == std::vector<std::pair<std::int32_t, std::int32_t>>{{1, 2}, {3, 4}});
  }

  TEST_CASE("reader diagnostics carry line numbers") {
    auto parse = [](const std::string& text) {
      std::istringstream in(text);
      return read_edge_list(in);
    };
    CHECK_THROWS_AS(parse(""), std::invalid_argument);
    CHECK_THROWS_AS(parse("abc\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("3 1 junk\n1 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("3 2\n1 2\n"), std::invalid_argument);      // promised 2, got 1
    CHECK_THROWS_AS(parse("3 1\n1 2\n2 3\n"), std::invalid_argument); // trailing content
    CHECK_THROWS_AS(parse("3 1\n2 2\n"), std::invalid_argument);      // not i < j
    CHECK_THROWS_AS(parse("3 1\n1 9\n"), std::invalid_argument);      // j > n
    CHECK_THROWS_AS(parse("3 2\n1 2\n1 2\n"), std::invalid_argument); // duplicate
    CHECK_THROWS_WITH_AS(parse("3 1\n1 2 7\n"), "line 2: expected \"i j\"",
                         std::invalid_argument);
  }
}
