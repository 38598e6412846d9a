#pragma once

#include <cstdint>

namespace ergraph {

/// Branching-process constants attached to a mean degree lambda.
struct RegimeConstants {
  double lambda = 0.0;
  double zeta = 0.0;        // survival probability, 0 when lambda <= 1
  double decay_rate = 0.0;  // lambda - 1 - log(lambda), zero iff lambda = 1
};

/// Survival probability of a Poisson(lambda) branching process: the largest
/// root of zeta = 1 - exp(-lambda * zeta). Zero for lambda <= 1; for
/// lambda > 1 the unique root in (0,1), located by bisection to within tol.
double survival_probability(double lambda, double tol = 1e-12);

/// Exponential decay rate lambda - 1 - log(lambda) of subcritical cluster
/// sizes; the largest cluster concentrates near log(n) / rate. Requires
/// lambda in (0,1).
double fragmentation_constant(double lambda);

/// Mean-degree schedule 1 + theta * n^(-1/3) for the critical window.
double critical_schedule(double theta, std::int64_t n);

RegimeConstants regime_constants(double lambda, double tol = 1e-12);

}  // namespace ergraph
