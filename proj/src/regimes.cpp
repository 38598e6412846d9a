#include "ergraph/regimes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ergraph {

namespace {

void check_lambda_positive(double lambda) {
  if (!std::isfinite(lambda) || lambda <= 0.0) {
    throw std::invalid_argument("lambda must be a positive finite real, got " +
                                std::to_string(lambda));
  }
}

// zeta + expm1(-lambda * zeta): the fixed-point residual in a form that is
// exact near zeta = 0. Negative below the positive root, positive above it.
double residual(double lambda, double zeta) { return zeta + std::expm1(-lambda * zeta); }

}  // namespace

double survival_probability(double lambda, double tol) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw std::invalid_argument("lambda must be a nonnegative finite real, got " +
                                std::to_string(lambda));
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (lambda <= 1.0) return 0.0;

  // Bracket the positive root: residual(1) = exp(-lambda) > 0, and the
  // residual is negative just above zero since the slope there is 1 - lambda.
  double lo = (lambda - 1.0) / (lambda * lambda);
  while (lo > 0.0 && residual(lambda, lo) >= 0.0) lo *= 0.5;
  double hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (residual(lambda, mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double fragmentation_constant(double lambda) {
  check_lambda_positive(lambda);
  if (lambda >= 1.0) {
    throw std::invalid_argument("fragmentation constant needs subcritical lambda in (0,1), got " +
                                std::to_string(lambda));
  }
  return lambda - 1.0 - std::log(lambda);
}

double critical_schedule(double theta, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("n must be positive, got " + std::to_string(n));
  if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
  return 1.0 + theta * std::pow(static_cast<double>(n), -1.0 / 3.0);
}

RegimeConstants regime_constants(double lambda, double tol) {
  check_lambda_positive(lambda);
  RegimeConstants rc;
  rc.lambda = lambda;
  rc.zeta = survival_probability(lambda, tol);
  rc.decay_rate = lambda - 1.0 - std::log(lambda);
  return rc;
}

}  // namespace ergraph
