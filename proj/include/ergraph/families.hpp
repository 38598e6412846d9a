#pragma once

#include <cstdint>

#include "ergraph/model.hpp"

namespace ergraph {

/// Threshold sequence eps_n for the degree-distribution experiment:
/// either a constant or value/sqrt(n) (which keeps n*eps_n^2 constant).
struct EpsRule {
  enum class Kind { fixed, inv_sqrt };
  Kind kind = Kind::fixed;
  double value = 0.0;

  double at(std::int64_t n) const;
};

/// Constant mean degree lambda at every n.
ModelFamily homogeneous_family(double lambda);

/// Supercritical perturbation lambda_n = (1 + sqrt(2 delta / lambda * log n / n)) lambda,
/// sized so the aggregate divergence R_n grows like delta * log n.
ModelFamily supercritical_perturbed_family(double lambda, double delta);

/// Critical-window schedule lambda_n = 1 + theta * n^(-1/3).
ModelFamily critical_family(double theta);

/// Connectivity-regime schedule lambda_n = coeff * log n.
ModelFamily log_growth_family(double coeff);

/// lambda_n = n, i.e. every edge present with probability 1.
ModelFamily complete_family();

/// Signed inhomogeneous perturbation lambda_ij = lambda +- c_n (sign by
/// parity of i+j), with c_n sized to 90% of the degree-convergence budget
/// sum (lambda_ij - lambda)^2 < n lambda delta log(n eps_n^2). Requires
/// n eps_n^2 > 1 at every n used.
ModelFamily signed_perturbation_family(double lambda, double delta, EpsRule eps);

/// The budget arithmetic behind signed_perturbation_family at one n,
/// exposed so runs can report the admissibility check.
struct SignedPerturbationBudget {
  double c = 0.0;        // per-edge offset
  double sup_dev = 0.0;  // sup |lambda_ij - lambda| (= c)
  double sum_sq = 0.0;   // sum over pairs of (lambda_ij - lambda)^2
  double budget = 0.0;   // n lambda delta log(n eps_n^2)
};
SignedPerturbationBudget signed_perturbation_budget(double lambda, double delta, double eps_n,
                                                    std::int64_t n);

/// Inhomogeneous connectivity configuration lambda_ij = c_ij log n with
/// c_ij = d (1 + w_n s_ij), w_n = sqrt(1 / (4 d n)), s_ij = +-1 by parity:
/// the relative spread vanishes and the quadratic sum stays under the 1/4
/// threshold (it approaches 1/8).
ModelFamily connectivity_inhom_family(double d);

/// The two admissibility conditions of the connectivity configuration at
/// one n: sup |c_ij/d - 1| (must vanish) and
/// sum (c_ij - d)^2 / (d (n - log n)) (limsup must stay below 1/4).
struct ConnectivityConditions {
  double sup_ratio_dev = 0.0;
  double sum_ratio = 0.0;
};
ConnectivityConditions connectivity_conditions(double d, std::int64_t n);

}  // namespace ergraph
