#include "ergraph/families.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ergraph/numeric.hpp"
#include "ergraph/regimes.hpp"

namespace ergraph {

namespace {

void check_positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw std::invalid_argument(std::string(what) + " must be a positive finite real, got " +
                                std::to_string(v));
  }
}

double parity_sign(std::int32_t i, std::int32_t j) { return ((i + j) % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

double EpsRule::at(std::int64_t n) const {
  if (n < 1) throw std::invalid_argument("n must be positive, got " + std::to_string(n));
  switch (kind) {
    case Kind::fixed: return value;
    case Kind::inv_sqrt: return value / std::sqrt(static_cast<double>(n));
  }
  throw std::logic_error("unhandled eps rule");
}

ModelFamily homogeneous_family(double lambda) {
  check_positive(lambda, "lambda");
  return [lambda](std::int64_t n) { return EdgeProbModel(n, Homogeneous{lambda}); };
}

ModelFamily supercritical_perturbed_family(double lambda, double delta) {
  check_positive(lambda, "lambda");
  check_positive(delta, "delta");
  return [lambda, delta](std::int64_t n) {
    return EdgeProbModel(n, HomogeneousSchedule{[lambda, delta](std::int64_t m) {
      const double dm = static_cast<double>(m);
      return (1.0 + std::sqrt(2.0 * delta / lambda * std::log(dm) / dm)) * lambda;
    }});
  };
}

ModelFamily critical_family(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
  return [theta](std::int64_t n) {
    return EdgeProbModel(n, HomogeneousSchedule{[theta](std::int64_t m) {
      return critical_schedule(theta, m);
    }});
  };
}

ModelFamily log_growth_family(double coeff) {
  check_positive(coeff, "log-growth coefficient");
  return [coeff](std::int64_t n) {
    return EdgeProbModel(n, HomogeneousSchedule{[coeff](std::int64_t m) {
      return coeff * std::log(static_cast<double>(m));
    }});
  };
}

ModelFamily complete_family() {
  return [](std::int64_t n) {
    return EdgeProbModel(n, HomogeneousSchedule{[](std::int64_t m) {
      return static_cast<double>(m);
    }});
  };
}

SignedPerturbationBudget signed_perturbation_budget(double lambda, double delta, double eps_n,
                                                    std::int64_t n) {
  check_positive(lambda, "lambda");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0,1), got " + std::to_string(delta));
  }
  check_positive(eps_n, "eps_n");
  if (n < 2) throw std::invalid_argument("need n >= 2, got " + std::to_string(n));

  const double dn = static_cast<double>(n);
  const double log_arg = dn * eps_n * eps_n;
  if (!(log_arg > 1.0)) {
    throw std::invalid_argument("signed perturbation needs n*eps_n^2 > 1 so the budget is "
                                "positive; got " + std::to_string(log_arg) +
                                " at n = " + std::to_string(n));
  }

  SignedPerturbationBudget b;
  b.budget = dn * lambda * delta * std::log(log_arg);
  const auto pairs = static_cast<double>(pair_count(n));
  b.c = std::sqrt(0.9 * b.budget / pairs);
  if (!(b.c < lambda)) {
    throw std::invalid_argument("signed perturbation offset " + std::to_string(b.c) +
                                " reaches the base rate " + std::to_string(lambda) +
                                " at n = " + std::to_string(n) + "; rates would leave (0, n)");
  }
  b.sup_dev = b.c;
  b.sum_sq = pairs * b.c * b.c;
  return b;
}

ModelFamily signed_perturbation_family(double lambda, double delta, EpsRule eps) {
  check_positive(lambda, "lambda");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0,1), got " + std::to_string(delta));
  }
  check_positive(eps.value, "eps value");
  return [lambda, delta, eps](std::int64_t n) {
    const auto budget = signed_perturbation_budget(lambda, delta, eps.at(n), n);
    const double c = budget.c;
    return EdgeProbModel(
        n, Inhomogeneous{[lambda, c](std::int32_t i, std::int32_t j) {
                           return lambda + c * parity_sign(i, j);
                         },
                         lambda + c});
  };
}

ConnectivityConditions connectivity_conditions(double d, std::int64_t n) {
  check_positive(d, "d");
  if (n < 2) throw std::invalid_argument("need n >= 2, got " + std::to_string(n));
  const double dn = static_cast<double>(n);
  const double w = std::sqrt(1.0 / (4.0 * d * dn));
  ConnectivityConditions cond;
  cond.sup_ratio_dev = w;
  // (c_ij - d)^2 = d^2 w^2 on every pair, so the quadratic condition closes.
  cond.sum_ratio = static_cast<double>(pair_count(n)) * d * w * w / (dn - std::log(dn));
  return cond;
}

ModelFamily connectivity_inhom_family(double d) {
  check_positive(d, "d");
  return [d](std::int64_t n) {
    const auto cond = connectivity_conditions(d, n);
    const double w = cond.sup_ratio_dev;
    if (!(w < 1.0)) {
      throw std::invalid_argument("n = " + std::to_string(n) +
                                  " is too small for the connectivity configuration with d = " +
                                  std::to_string(d) + "; relative spread reaches 1");
    }
    const double log_n = std::log(static_cast<double>(n));
    return EdgeProbModel(
        n, Inhomogeneous{[d, w, log_n](std::int32_t i, std::int32_t j) {
                           return d * (1.0 + w * parity_sign(i, j)) * log_n;
                         },
                         d * (1.0 + w) * log_n});
  };
}

}  // namespace ergraph
