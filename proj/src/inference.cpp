#include "ergraph/inference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ergraph/numeric.hpp"
#include "ergraph/rng.hpp"
#include "ergraph/sampler.hpp"

namespace ergraph {

namespace {

void check_same_n(const ModelPair& pair, const GraphSample& g) {
  if (pair.n() != g.n) {
    throw std::invalid_argument("graph has n = " + std::to_string(g.n) +
                                " but the model pair has n = " + std::to_string(pair.n()));
  }
}

void check_rate_a(double a) {
  if (!std::isfinite(a) || !(a > 0.0)) {
    throw std::invalid_argument("rate a must be a positive finite real, got " +
                                std::to_string(a));
  }
}

void check_reps(std::int64_t reps, std::int64_t minimum) {
  if (reps < minimum) {
    throw std::invalid_argument("need at least " + std::to_string(minimum) +
                                " replications, got " + std::to_string(reps));
  }
}

double binomial_se(double phat, std::int64_t reps) {
  return std::sqrt(phat * (1.0 - phat) / static_cast<double>(reps));
}

}  // namespace

LogLikelihoodRatio log_lr(const ModelPair& pair, const GraphSample& g) {
  check_same_n(pair, g);
  LogLikelihoodRatio out;

  if (pair.uniform()) {
    const auto c = edge_coefficients(pair);
    out.k_sum = c.k * static_cast<double>(g.edge_count());
    out.l_sum = c.l * static_cast<double>(pair_count(pair.n()));
  } else {
    CompensatedSum k_sum;
    for (const auto& [i, j] : g.edges) k_sum.add(edge_coefficients(pair, i, j).k);
    CompensatedSum l_sum;
    const auto n = static_cast<std::int32_t>(pair.n());
    for (std::int32_t i = 1; i < n; ++i) {
      for (std::int32_t j = i + 1; j <= n; ++j) l_sum.add(edge_coefficients(pair, i, j).l);
    }
    out.k_sum = k_sum.value();
    out.l_sum = l_sum.value();
  }

  out.value = -(out.k_sum + out.l_sum);
  return out;
}

bool lr_test(const ModelPair& pair, const GraphSample& g, double a) {
  check_rate_a(a);
  return log_lr(pair, g).value < -std::log(a);
}

TestRiskReport weighted_risk_mc(const ModelPair& pair, double a, std::int64_t reps,
                                std::uint64_t seed) {
  check_rate_a(a);
  check_reps(reps, 1);

  std::int64_t accepts_q_under_p = 0;
  std::int64_t keeps_p_under_q = 0;
  for (std::int64_t r = 0; r < reps; ++r) {
    const auto x = sample(pair.base(), Rng::derive(Rng::derive(seed, 0), static_cast<std::uint64_t>(r)));
    if (lr_test(pair, x, a)) ++accepts_q_under_p;
    const auto y = sample(pair.perturbed(), Rng::derive(Rng::derive(seed, 1), static_cast<std::uint64_t>(r)));
    if (!lr_test(pair, y, a)) ++keeps_p_under_q;
  }

  const double type1 = static_cast<double>(accepts_q_under_p) / static_cast<double>(reps);
  const double type2 = static_cast<double>(keeps_p_under_q) / static_cast<double>(reps);

  TestRiskReport report;
  report.a = a;
  report.reps = reps;
  report.type1_weighted = type1 / a;
  report.type1_weighted_se = binomial_se(type1, reps) / a;
  report.type2 = type2;
  report.type2_se = binomial_se(type2, reps);
  report.total = report.type1_weighted + report.type2;
  report.total_se = std::sqrt(report.type1_weighted_se * report.type1_weighted_se +
                              report.type2_se * report.type2_se);
  return report;
}

double rc_condition_ii_mc(const ModelPair& pair, double a, double delta, std::int64_t reps,
                          std::uint64_t seed) {
  check_rate_a(a);
  if (!std::isfinite(delta) || !(delta > 0.0)) {
    throw std::invalid_argument("delta must be a positive finite real, got " +
                                std::to_string(delta));
  }
  check_reps(reps, 1);

  const double threshold = std::log(delta * a);
  std::int64_t hits = 0;
  for (std::int64_t r = 0; r < reps; ++r) {
    const auto y = sample(pair.perturbed(), Rng::derive(seed, static_cast<std::uint64_t>(r)));
    if (log_lr(pair, y).value < threshold) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(reps);
}

double clt_check(const ModelPair& pair, std::int64_t reps, std::uint64_t seed) {
  check_reps(reps, 100);
  const double s2 = lindeberg_normalizer(pair);
  if (s2 <= 0.0) {
    throw std::domain_error("Lindeberg normalizer is zero (models coincide); "
                            "normalized sums are undefined");
  }
  const double s = std::sqrt(s2);
  const std::int64_t n = pair.n();

  // Mean term sum_{i<j} k q, so each replicate reduces to
  // (sum of k over present edges - mean) / s.
  double k_mean_total;
  if (pair.uniform()) {
    const auto c = edge_coefficients(pair);
    k_mean_total = c.k * pair.perturbed().prob() * static_cast<double>(pair_count(n));
  } else {
    CompensatedSum mean;
    const auto n32 = static_cast<std::int32_t>(n);
    for (std::int32_t i = 1; i < n32; ++i) {
      for (std::int32_t j = i + 1; j <= n32; ++j) {
        mean.add(edge_coefficients(pair, i, j).k * pair.perturbed().prob_at(i, j));
      }
    }
    k_mean_total = mean.value();
  }

  std::vector<double> stats;
  stats.reserve(static_cast<std::size_t>(reps));
  for (std::int64_t r = 0; r < reps; ++r) {
    const auto y = sample(pair.perturbed(), Rng::derive(seed, static_cast<std::uint64_t>(r)));
    double k_present;
    if (pair.uniform()) {
      k_present = edge_coefficients(pair).k * static_cast<double>(y.edge_count());
    } else {
      CompensatedSum sum;
      for (const auto& [i, j] : y.edges) sum.add(edge_coefficients(pair, i, j).k);
      k_present = sum.value();
    }
    stats.push_back((k_present - k_mean_total) / s);
  }

  // One-sample Kolmogorov-Smirnov distance against the standard normal.
  std::sort(stats.begin(), stats.end());
  const auto count = static_cast<double>(stats.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const double cdf = normal_cdf(stats[i]);
    ks = std::max(ks, (static_cast<double>(i) + 1.0) / count - cdf);
    ks = std::max(ks, cdf - static_cast<double>(i) / count);
  }
  return ks;
}

RegionProbs lr_acceptance_probs(const ModelPair& pair, double a) {
  check_rate_a(a);
  if (!pair.uniform()) {
    throw std::logic_error("closed-form region probabilities exist only for uniform pairs");
  }
  const auto c = edge_coefficients(pair);
  const std::int64_t total = pair_count(pair.n());
  const double p = pair.base().prob();
  const double q = pair.perturbed().prob();
  const double log_a = std::log(a);

  // log_lr depends only on the edge count m, so sum the two binomial pmfs
  // over exactly the m that fire the test, with the same strict comparison
  // lr_test uses.
  const double log_total_fact = std::lgamma(static_cast<double>(total) + 1.0);
  RegionProbs probs;
  for (std::int64_t m = 0; m <= total; ++m) {
    const double dm = static_cast<double>(m);
    const double log_lr_m = -(c.k * dm + c.l * static_cast<double>(total));
    if (!(log_lr_m < -log_a)) continue;
    const double log_choose = log_total_fact - std::lgamma(dm + 1.0) -
                              std::lgamma(static_cast<double>(total - m) + 1.0);
    probs.p_prob += std::exp(log_choose + dm * std::log(p) +
                             static_cast<double>(total - m) * std::log1p(-p));
    probs.q_prob += std::exp(log_choose + dm * std::log(q) +
                             static_cast<double>(total - m) * std::log1p(-q));
  }
  return probs;
}

EnumerationResult enumerate_exact(const ModelPair& pair,
                                  const std::function<bool(const GraphSample&)>& event) {
  if (!event) throw std::invalid_argument("missing event predicate");
  const std::int64_t n = pair.n();
  if (n > 5) {
    throw std::invalid_argument("exhaustive enumeration is limited to n <= 5, got n = " +
                                std::to_string(n));
  }

  // Fixed lexicographic edge order; bit b of a mask toggles pairs[b].
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  std::vector<double> p_edge, q_edge;
  for (std::int32_t i = 1; i < n; ++i) {
    for (std::int32_t j = i + 1; j <= n; ++j) {
      const double p = pair.base().prob_at(i, j);
      const double q = pair.perturbed().prob_at(i, j);
      if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) {
        throw std::domain_error("enumeration needs interior edge probabilities; pair {" +
                                std::to_string(i) + "," + std::to_string(j) + "} has p = " +
                                std::to_string(p) + ", q = " + std::to_string(q));
      }
      pairs.emplace_back(i, j);
      p_edge.push_back(p);
      q_edge.push_back(q);
    }
  }

  EnumerationResult out;
  const std::size_t bits = pairs.size();
  GraphSample g;
  g.n = n;
  for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
    g.edges.clear();
    double p_mass = 1.0, q_mass = 1.0;
    for (std::size_t b = 0; b < bits; ++b) {
      if (mask & (1u << b)) {
        g.edges.push_back(pairs[b]);
        p_mass *= p_edge[b];
        q_mass *= q_edge[b];
      } else {
        p_mass *= 1.0 - p_edge[b];
        q_mass *= 1.0 - q_edge[b];
      }
    }
    if (event(g)) {
      out.p_event += p_mass;
      out.q_event += q_mass;
    }
    out.kl += q_mass * std::log(q_mass / p_mass);
    out.affinity += std::sqrt(p_mass * q_mass);
  }
  return out;
}

}  // namespace ergraph
