#pragma once

#include <cstdint>
#include <functional>

#include "ergraph/contiguity.hpp"
#include "ergraph/graph.hpp"
#include "ergraph/model.hpp"

namespace ergraph {

/// log dP/dQ at an observed graph: -(sum_present k + sum_all_pairs l),
/// kept with its two halves for diagnostics.
struct LogLikelihoodRatio {
  double value = 0.0;
  double k_sum = 0.0;  // sum of k over edges present
  double l_sum = 0.0;  // sum of l over all pairs
};

LogLikelihoodRatio log_lr(const ModelPair& pair, const GraphSample& g);

/// Likelihood-ratio test 1{q > a p}: true iff log_lr < -log(a).
bool lr_test(const ModelPair& pair, const GraphSample& g, double a);

/// Weighted testing risk of the lr_test at rate a:
/// total = a^(-1) P(test accepts Q) + Q(test keeps P), each half with its
/// binomial standard error.
struct TestRiskReport {
  double a = 0.0;
  std::int64_t reps = 0;
  double type1_weighted = 0.0;
  double type1_weighted_se = 0.0;
  double type2 = 0.0;
  double type2_se = 0.0;
  double total = 0.0;
  double total_se = 0.0;
};

TestRiskReport weighted_risk_mc(const ModelPair& pair, double a, std::int64_t reps,
                                std::uint64_t seed);

/// Empirical frequency, under Q-sampling, of {log_lr < log(delta * a)} —
/// the event whose smallness for all delta grids out remote contiguity
/// failures. Nonincreasing in delta by construction.
double rc_condition_ii_mc(const ModelPair& pair, double a, double delta, std::int64_t reps,
                          std::uint64_t seed);

/// Kolmogorov-Smirnov distance between the replicated normalized sums
/// sum k (Y - q) / s under Q and the standard normal CDF. Requires
/// reps >= 100 and a nonzero normalizer.
double clt_check(const ModelPair& pair, std::int64_t reps, std::uint64_t seed);

/// Closed-form P and Q probabilities of the acceptance region {q > a p}
/// for a uniform pair: the region depends on the graph only through its
/// edge count, so both probabilities are binomial tail sums over the
/// C(n,2) pairs. O(C(n,2)) time.
struct RegionProbs {
  double p_prob = 0.0;
  double q_prob = 0.0;
};

RegionProbs lr_acceptance_probs(const ModelPair& pair, double a);

/// Exact sums over all 2^C(n,2) graphs, n <= 5: ground truth for the
/// closed-form diagnostics and for test probabilities.
struct EnumerationResult {
  double p_event = 0.0;
  double q_event = 0.0;
  double kl = 0.0;
  double affinity = 0.0;
};

EnumerationResult enumerate_exact(const ModelPair& pair,
                                  const std::function<bool(const GraphSample&)>& event);

}  // namespace ergraph
