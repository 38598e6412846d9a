#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ergraph/model.hpp"

namespace ergraph {

/// A base/perturbed pair (P, Q) of edge-probability models on the same n.
/// Base rates are written mu, perturbed rates lambda. Operations in this
/// header require every edge probability strictly inside (0,1) and throw
/// std::domain_error otherwise; endpoints are legal for sampling only.
class ModelPair {
 public:
  ModelPair(EdgeProbModel base, EdgeProbModel perturbed);

  const EdgeProbModel& base() const noexcept { return base_; }
  const EdgeProbModel& perturbed() const noexcept { return perturbed_; }
  std::int64_t n() const noexcept { return base_.n(); }
  bool uniform() const noexcept { return base_.uniform() && perturbed_.uniform(); }

 private:
  EdgeProbModel base_;
  EdgeProbModel perturbed_;
};

/// Per-edge log contrasts of the likelihood ratio:
///   k = log(q(1-p) / (p(1-q))),  l = log((1-q)/(1-p)).
/// Both vanish when p = q.
struct EdgeCoefficients {
  double k = 0.0;
  double l = 0.0;
};

/// Coefficients for one edge with probabilities p (base) and q (perturbed),
/// evaluated in log1p form so nearby and near-zero probabilities keep full
/// precision.
EdgeCoefficients edge_coefficients(double p, double q);

/// Coefficients for pair {i,j} of a model pair.
EdgeCoefficients edge_coefficients(const ModelPair& pair, std::int32_t i, std::int32_t j);

/// Shared coefficients of a uniform pair; throws std::logic_error when
/// either side is inhomogeneous.
EdgeCoefficients edge_coefficients(const ModelPair& pair);

/// KL(Q||P) = sum over pairs of (k q + l). Nonnegative; tiny negative
/// rounding residue (within 1e-12) is clamped to zero.
double kl_divergence(const ModelPair& pair);

/// Lindeberg normalizer s2 = sum over pairs of k^2 q (1-q).
double lindeberg_normalizer(const ModelPair& pair);

/// Left-hand side of the Lindeberg condition at threshold eps: the exact
/// two-point expectation sum_{i<j} E[k^2 (Y-q)^2 ; |k (Y-q)| > eps s] / s^2.
double lindeberg_lhs(const ModelPair& pair, double eps);

struct RateQuantities {
  double r = 0.0;  // sup |mu - lambda| / mu
  double R = 0.0;  // sum (lambda - mu)^2 / (mu (n - mu))
};

/// Perturbation-size quantities (r, R) controlling the admissible rate:
/// rates a_n = o(exp(-R)) are exactly the usable ones when r -> 0.
RateQuantities rate_quantities(const ModelPair& pair);

/// Product of per-edge affinities sqrt(pq) + sqrt((1-p)(1-q)), accumulated
/// in log space. Lies in (0,1], equal to 1 iff the models coincide.
double hellinger_affinity(const ModelPair& pair);

/// Closed-form R for a homogeneous pair: C(n,2) (lambda_n - lambda)^2 / (lambda (n - lambda)).
double homogeneous_rate(double lambda, double lambda_n, std::int64_t n);

/// R for a perturbed-rate function against a homogeneous base:
/// sum_{i<j} (lambda_ij - lambda)^2 / (lambda (n - lambda)).
double inhomogeneous_rate(double lambda,
                          const std::function<double(std::int32_t, std::int32_t)>& lambda_of_edge,
                          std::int64_t n);

/// Exact vs leading-order Hellinger affinity between mean degrees 1 and
/// lambda_n in the near-critical regime: approx = exp(-n (lambda_n - 1)^2 / 16).
struct AffinityApprox {
  double exact = 0.0;
  double approx = 0.0;
};
AffinityApprox critical_affinity_approx(double lambda_n, std::int64_t n);

/// All pair diagnostics in one pass, plus the margin kl + log(a) for each
/// requested rate a (negative margins back admissibility of that rate).
struct ContiguityReport {
  std::int64_t n = 0;
  double kl = 0.0;
  double s2 = 0.0;
  double r = 0.0;
  double R = 0.0;
  double hellinger_affinity = 0.0;
  std::vector<std::pair<double, double>> delta_margin;  // (a, kl + log a)
};

ContiguityReport contiguity_report(const ModelPair& pair, std::span<const double> a_values = {});

/// "key = value" lines, one per field, margins as delta_margin[a].
std::string report_kv_block(const ContiguityReport& report);

/// CSV columns: n, kl, s2, r, R, affinity.
std::string report_csv_header();
std::string report_csv_row(const ContiguityReport& report);

enum class Trend {
  diverges_to_minus_inf,
  bounded,
  diverges_to_plus_inf,
  inconclusive,
};

const char* trend_name(Trend t) noexcept;

/// Margin log(a_n) + R_n along a grid of n. The trend label comes from a
/// least-squares slope of margin against log n over the top half of the
/// grid: slope < -0.1 diverges to -inf, slope > 0.1 diverges to +inf,
/// |slope| <= 0.1 with margin range < 1 is bounded, anything else is
/// inconclusive. normalized_margins carries (kl + log a_n)/s_n (NaN when
/// s_n = 0), the centered-sum criterion companion to the raw margin.
struct RateMarginCurve {
  std::vector<std::int64_t> grid;
  std::vector<double> margins;
  std::vector<double> normalized_margins;
  Trend classification = Trend::inconclusive;
};

using PairFamily = std::function<ModelPair(std::int64_t)>;
using RateSchedule = std::function<double(std::int64_t)>;

RateMarginCurve rate_margin_curve(const PairFamily& family, const RateSchedule& a_of_n,
                                  std::span<const std::int64_t> grid);

}  // namespace ergraph
