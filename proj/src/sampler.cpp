#include "ergraph/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ergraph/rng.hpp"

namespace ergraph {

namespace {

// Visits each vertex pair with probability p, in the column-major order
// (0,1),(0,2),(1,2),(0,3),...  Geometric skips make the walk O(n + m)
// expected instead of O(n^2). Pairs are 0-based with w < v.
template <typename Take>
void skip_walk(std::int64_t n, double p, Rng& rng, Take&& take) {
  if (p <= 0.0 || n < 2) return;
  if (p >= 1.0) {
    for (std::int64_t v = 1; v < n; ++v) {
      for (std::int64_t w = 0; w < v; ++w) take(w, v);
    }
    return;
  }
  const double lp = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    const double r = rng.uniform();
    w += 1 + static_cast<std::int64_t>(std::log1p(-r) / lp);
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) take(w, v);
  }
}

}  // namespace

GraphSample sample(const EdgeProbModel& model, std::uint64_t seed) {
  const std::int64_t n = model.n();
  if (n > std::numeric_limits<std::int32_t>::max()) {
    throw std::invalid_argument("sampling supports at most " +
                                std::to_string(std::numeric_limits<std::int32_t>::max()) +
                                " vertices, got n = " + std::to_string(n));
  }

  GraphSample g;
  g.n = n;
  g.seed = seed;
  Rng rng(seed);

  const double p_bound = model.prob_bound();
  if (p_bound > 0.0 && p_bound < 1.0) {
    const double expected = p_bound * static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    g.edges.reserve(static_cast<std::size_t>(1.1 * expected) + 16);
  }

  if (model.uniform()) {
    skip_walk(n, p_bound, rng, [&](std::int64_t w, std::int64_t v) {
      g.edges.emplace_back(static_cast<std::int32_t>(w + 1), static_cast<std::int32_t>(v + 1));
    });
  } else {
    // Thinning: visit candidates at the rate bound, keep pair {i,j} with
    // probability lambda_ij / lambda_max. Exact, one extra uniform per candidate.
    const double rate_bound = model.rate_bound();
    skip_walk(n, p_bound, rng, [&](std::int64_t w, std::int64_t v) {
      const auto i = static_cast<std::int32_t>(w + 1);
      const auto j = static_cast<std::int32_t>(v + 1);
      if (rng.uniform() * rate_bound < model.rate_at(i, j)) g.edges.emplace_back(i, j);
    });
  }

  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

}  // namespace ergraph
