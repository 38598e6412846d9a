#include "ergraph/contiguity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ergraph/format.hpp"
#include "ergraph/numeric.hpp"

namespace ergraph {

namespace {

[[noreturn]] void degenerate(double mu, double lambda, std::int64_t n) {
  throw std::domain_error("edge rates must lie strictly inside (0, n); got base " +
                          std::to_string(mu) + ", perturbed " + std::to_string(lambda) +
                          " with n = " + std::to_string(n));
}

// Both rates strictly inside (0, n): the analytic formulas assume interior
// edge probabilities even though 0 and n are legal for sampling.
void check_interior(double mu, double lambda, std::int64_t n) {
  const double dn = static_cast<double>(n);
  if (!(mu > 0.0 && mu < dn && lambda > 0.0 && lambda < dn)) degenerate(mu, lambda, n);
}

double kl_term(const EdgeCoefficients& c, double q) { return c.k * q + c.l; }

double s2_term(const EdgeCoefficients& c, double q) { return c.k * c.k * q * (1.0 - q); }

// log(sqrt(pq) + sqrt((1-p)(1-q))), written as log1p(-D) with
// D = (1 - sqrt((1-p)(1-q))) - sqrt(pq). For the sparse rates p,q ~ 1/n the
// direct form would evaluate log of 1 - O(1/n) and lose the low-order digits
// that a sum over C(n,2) edges then amplifies.
double log_affinity_term(double p, double q) {
  if (p == q) return 0.0;
  const double w = p + q - p * q;  // 1 - (1-p)(1-q)
  const double t = w / (1.0 + std::sqrt(1.0 - w));
  return std::log1p(std::sqrt(p * q) - t);
}

double rate_r_term(double mu, double lambda) { return std::abs(mu - lambda) / mu; }

double rate_R_term(double mu, double lambda, double dn) {
  const double d = lambda - mu;
  return d * d / (mu * (dn - mu));
}

struct PairTotals {
  double kl = 0.0;
  double s2 = 0.0;
  double r = 0.0;
  double R = 0.0;
  double log_affinity = 0.0;
};

double clamp_kl(double kl) {
  if (kl >= 0.0) return kl;
  if (kl >= -1e-12) return 0.0;
  throw std::runtime_error("KL accumulation produced " + std::to_string(kl) +
                           ", negative beyond rounding tolerance");
}

// Per-edge traversal of an inhomogeneous pair is an honest O(n^2) loop;
// keep the index arithmetic in 32-bit range.
void check_loopable(std::int64_t n) {
  if (n > std::numeric_limits<std::int32_t>::max()) {
    throw std::invalid_argument("per-edge traversal supports at most 2^31-1 vertices, got n = " +
                                std::to_string(n));
  }
}

PairTotals pair_totals(const ModelPair& pair) {
  const std::int64_t n = pair.n();
  const double dn = static_cast<double>(n);
  PairTotals totals;

  if (pair.uniform()) {
    const double mu = pair.base().rate();
    const double lambda = pair.perturbed().rate();
    check_interior(mu, lambda, n);
    const double p = mu / dn;
    const double q = lambda / dn;
    const auto c = edge_coefficients(p, q);
    const auto m = static_cast<double>(pair_count(n));
    totals.kl = clamp_kl(m * kl_term(c, q));
    totals.s2 = m * s2_term(c, q);
    totals.r = rate_r_term(mu, lambda);
    totals.R = m * rate_R_term(mu, lambda, dn);
    totals.log_affinity = std::min(0.0, m * log_affinity_term(p, q));
    return totals;
  }

  check_loopable(n);
  CompensatedSum kl_sum, s2_sum, R_sum, aff_sum;
  double r_max = 0.0;
  for (std::int32_t i = 1; i < n; ++i) {
    for (std::int32_t j = i + 1; j <= n; ++j) {
      const double mu = pair.base().rate_at(i, j);
      const double lambda = pair.perturbed().rate_at(i, j);
      check_interior(mu, lambda, n);
      const double p = mu / dn;
      const double q = lambda / dn;
      const auto c = edge_coefficients(p, q);
      kl_sum.add(kl_term(c, q));
      s2_sum.add(s2_term(c, q));
      R_sum.add(rate_R_term(mu, lambda, dn));
      aff_sum.add(log_affinity_term(p, q));
      r_max = std::max(r_max, rate_r_term(mu, lambda));
    }
  }
  totals.kl = clamp_kl(kl_sum.value());
  totals.s2 = s2_sum.value();
  totals.r = r_max;
  totals.R = R_sum.value();
  totals.log_affinity = std::min(0.0, aff_sum.value());
  return totals;
}

}  // namespace

ModelPair::ModelPair(EdgeProbModel base, EdgeProbModel perturbed)
    : base_(std::move(base)), perturbed_(std::move(perturbed)) {
  if (base_.n() != perturbed_.n()) {
    throw std::invalid_argument("model pair needs a shared vertex count, got " +
                                std::to_string(base_.n()) + " and " +
                                std::to_string(perturbed_.n()));
  }
}

EdgeCoefficients edge_coefficients(double p, double q) {
  if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) {
    throw std::domain_error("edge probabilities must lie strictly inside (0,1); got p = " +
                            std::to_string(p) + ", q = " + std::to_string(q));
  }
  if (p == q) return {0.0, 0.0};
  EdgeCoefficients c;
  c.k = std::log(q / p) + std::log1p((q - p) / (1.0 - q));
  c.l = std::log1p((p - q) / (1.0 - p));
  return c;
}

EdgeCoefficients edge_coefficients(const ModelPair& pair, std::int32_t i, std::int32_t j) {
  const double mu = pair.base().rate_at(i, j);
  const double lambda = pair.perturbed().rate_at(i, j);
  check_interior(mu, lambda, pair.n());
  const double dn = static_cast<double>(pair.n());
  return edge_coefficients(mu / dn, lambda / dn);
}

EdgeCoefficients edge_coefficients(const ModelPair& pair) {
  if (!pair.uniform()) {
    throw std::logic_error("shared coefficients exist only for uniform pairs; "
                           "use the per-edge overload");
  }
  const double mu = pair.base().rate();
  const double lambda = pair.perturbed().rate();
  check_interior(mu, lambda, pair.n());
  const double dn = static_cast<double>(pair.n());
  return edge_coefficients(mu / dn, lambda / dn);
}

double kl_divergence(const ModelPair& pair) { return pair_totals(pair).kl; }

double lindeberg_normalizer(const ModelPair& pair) { return pair_totals(pair).s2; }

double lindeberg_lhs(const ModelPair& pair, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("eps must be a positive finite real");
  }
  const double s2 = lindeberg_normalizer(pair);
  if (s2 <= 0.0) {
    throw std::domain_error("Lindeberg normalizer is zero (models coincide); "
                            "the normalized condition is undefined");
  }
  const double s = std::sqrt(s2);
  const std::int64_t n = pair.n();
  const double dn = static_cast<double>(n);

  // Exact two-point expectation: k(Y-q) equals k(1-q) with mass q and -kq
  // with mass 1-q; each branch enters when its magnitude exceeds eps*s.
  const auto term = [&](const EdgeCoefficients& c, double q) {
    const double k2 = c.k * c.k;
    double v = 0.0;
    if (std::abs(c.k) * (1.0 - q) > eps * s) v += k2 * (1.0 - q) * (1.0 - q) * q;
    if (std::abs(c.k) * q > eps * s) v += k2 * q * q * (1.0 - q);
    return v;
  };

  if (pair.uniform()) {
    const double mu = pair.base().rate();
    const double lambda = pair.perturbed().rate();
    check_interior(mu, lambda, n);
    const auto c = edge_coefficients(mu / dn, lambda / dn);
    return static_cast<double>(pair_count(n)) * term(c, lambda / dn) / s2;
  }

  check_loopable(n);
  CompensatedSum sum;
  for (std::int32_t i = 1; i < n; ++i) {
    for (std::int32_t j = i + 1; j <= n; ++j) {
      const double mu = pair.base().rate_at(i, j);
      const double lambda = pair.perturbed().rate_at(i, j);
      check_interior(mu, lambda, n);
      sum.add(term(edge_coefficients(mu / dn, lambda / dn), lambda / dn));
    }
  }
  return sum.value() / s2;
}

RateQuantities rate_quantities(const ModelPair& pair) {
  const auto totals = pair_totals(pair);
  return {totals.r, totals.R};
}

double hellinger_affinity(const ModelPair& pair) {
  return std::exp(pair_totals(pair).log_affinity);
}

double homogeneous_rate(double lambda, double lambda_n, std::int64_t n) {
  if (n < 2) throw std::invalid_argument("need n >= 2 vertices, got " + std::to_string(n));
  check_interior(lambda, lambda_n, n);
  return static_cast<double>(pair_count(n)) *
         rate_R_term(lambda, lambda_n, static_cast<double>(n));
}

double inhomogeneous_rate(double lambda,
                          const std::function<double(std::int32_t, std::int32_t)>& lambda_of_edge,
                          std::int64_t n) {
  if (n < 2) throw std::invalid_argument("need n >= 2 vertices, got " + std::to_string(n));
  if (!lambda_of_edge) throw std::invalid_argument("missing perturbed rate function");
  const double dn = static_cast<double>(n);
  if (!(lambda > 0.0 && lambda < dn)) degenerate(lambda, lambda, n);
  check_loopable(n);
  CompensatedSum sum;
  for (std::int32_t i = 1; i < n; ++i) {
    for (std::int32_t j = i + 1; j <= n; ++j) {
      const double lij = lambda_of_edge(i, j);
      if (!(lij > 0.0 && lij < dn)) degenerate(lambda, lij, n);
      const double d = lij - lambda;
      sum.add(d * d);
    }
  }
  return sum.value() / (lambda * (dn - lambda));
}

AffinityApprox critical_affinity_approx(double lambda_n, std::int64_t n) {
  if (n < 2) throw std::invalid_argument("need n >= 2 vertices, got " + std::to_string(n));
  ModelPair pair{EdgeProbModel(n, Homogeneous{1.0}), EdgeProbModel(n, Homogeneous{lambda_n})};
  AffinityApprox out;
  out.exact = hellinger_affinity(pair);
  const double d = lambda_n - 1.0;
  out.approx = std::exp(-static_cast<double>(n) * d * d / 16.0);
  return out;
}

ContiguityReport contiguity_report(const ModelPair& pair, std::span<const double> a_values) {
  const auto totals = pair_totals(pair);
  ContiguityReport report;
  report.n = pair.n();
  report.kl = totals.kl;
  report.s2 = totals.s2;
  report.r = totals.r;
  report.R = totals.R;
  report.hellinger_affinity = std::exp(totals.log_affinity);
  report.delta_margin.reserve(a_values.size());
  for (const double a : a_values) {
    if (!(a > 0.0 && a <= 1.0)) {
      throw std::invalid_argument("rate a must lie in (0,1], got " + std::to_string(a));
    }
    report.delta_margin.emplace_back(a, totals.kl + std::log(a));
  }
  return report;
}

std::string report_kv_block(const ContiguityReport& report) {
  std::ostringstream out;
  out << "n = " << report.n << '\n';
  out << "kl = " << fmt_g9(report.kl) << '\n';
  out << "s2 = " << fmt_g9(report.s2) << '\n';
  out << "r = " << fmt_g9(report.r) << '\n';
  out << "R = " << fmt_g9(report.R) << '\n';
  out << "affinity = " << fmt_g9(report.hellinger_affinity) << '\n';
  for (const auto& [a, margin] : report.delta_margin) {
    out << "delta_margin[" << fmt_g9(a) << "] = " << fmt_g9(margin) << '\n';
  }
  return out.str();
}

std::string report_csv_header() { return "n,kl,s2,r,R,affinity"; }

std::string report_csv_row(const ContiguityReport& report) {
  std::ostringstream out;
  out << report.n << ',' << fmt_g9(report.kl) << ',' << fmt_g9(report.s2) << ','
      << fmt_g9(report.r) << ',' << fmt_g9(report.R) << ','
      << fmt_g9(report.hellinger_affinity);
  return out.str();
}

const char* trend_name(Trend t) noexcept {
  switch (t) {
    case Trend::diverges_to_minus_inf: return "diverges_to_minus_inf";
    case Trend::bounded: return "bounded";
    case Trend::diverges_to_plus_inf: return "diverges_to_plus_inf";
    case Trend::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

// Documented trend rule: least-squares slope of margin against log n over
// the top half of the grid; +-0.1 slope thresholds, range < 1 for "bounded".
Trend classify_margins(const std::vector<std::int64_t>& grid, const std::vector<double>& margins) {
  const std::size_t m = grid.size();
  if (m < 2) return Trend::inconclusive;
  std::size_t start = m / 2;
  if (m - start < 2) start = m - 2;

  double x_mean = 0.0, y_mean = 0.0;
  const auto count = static_cast<double>(m - start);
  for (std::size_t i = start; i < m; ++i) {
    x_mean += std::log(static_cast<double>(grid[i]));
    y_mean += margins[i];
  }
  x_mean /= count;
  y_mean /= count;

  double sxy = 0.0, sxx = 0.0;
  double lo = margins[start], hi = margins[start];
  for (std::size_t i = start; i < m; ++i) {
    const double dx = std::log(static_cast<double>(grid[i])) - x_mean;
    sxy += dx * (margins[i] - y_mean);
    sxx += dx * dx;
    lo = std::min(lo, margins[i]);
    hi = std::max(hi, margins[i]);
  }
  const double slope = sxy / sxx;

  if (slope < -0.1) return Trend::diverges_to_minus_inf;
  if (slope > 0.1) return Trend::diverges_to_plus_inf;
  if (hi - lo < 1.0) return Trend::bounded;
  return Trend::inconclusive;
}

}  // namespace

RateMarginCurve rate_margin_curve(const PairFamily& family, const RateSchedule& a_of_n,
                                  std::span<const std::int64_t> grid) {
  if (!family || !a_of_n) throw std::invalid_argument("missing pair family or rate schedule");
  if (grid.empty()) throw std::invalid_argument("grid must be nonempty");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (grid[i] >= grid[i + 1]) {
      throw std::invalid_argument("grid must be strictly increasing");
    }
  }

  RateMarginCurve curve;
  curve.grid.assign(grid.begin(), grid.end());
  curve.margins.reserve(grid.size());
  curve.normalized_margins.reserve(grid.size());

  for (const std::int64_t n : grid) {
    try {
      const ModelPair pair = family(n);
      const double a = a_of_n(n);
      if (!(a > 0.0 && a < 1.0)) {
        throw std::invalid_argument("rate a_n must lie in (0,1), got " + std::to_string(a));
      }
      const auto totals = pair_totals(pair);
      curve.margins.push_back(std::log(a) + totals.R);
      curve.normalized_margins.push_back(
          totals.s2 > 0.0 ? (totals.kl + std::log(a)) / std::sqrt(totals.s2)
                          : std::numeric_limits<double>::quiet_NaN());
    } catch (const std::domain_error& e) {
      throw std::domain_error("n = " + std::to_string(n) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("n = " + std::to_string(n) + ": " + e.what());
    }
  }

  curve.classification = classify_margins(curve.grid, curve.margins);
  return curve;
}

}  // namespace ergraph
