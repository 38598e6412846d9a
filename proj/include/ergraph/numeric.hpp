#pragma once

#include <cmath>
#include <cstdint>

namespace ergraph {

/// Neumaier-compensated accumulator. Edge sums range over up to C(n,2)
/// terms of mixed magnitude; naive summation loses digits we care about.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Number of vertex pairs C(n,2). Exact in int64 for all supported n.
inline std::int64_t pair_count(std::int64_t n) noexcept {
  return (n % 2 == 0) ? (n / 2) * (n - 1) : n * ((n - 1) / 2);
}

/// Standard normal CDF.
inline double normal_cdf(double x) noexcept {
  return 0.5 * (1.0 + std::erf(x / std::sqrt(2.0)));
}

/// Poisson mass e^(-lambda) lambda^k / k!, evaluated in log space so large
/// k and lambda stay finite.
inline double poisson_pmf(std::int64_t k, double lambda) noexcept {
  if (k < 0) return 0.0;
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(-lambda + static_cast<double>(k) * std::log(lambda) -
                  std::lgamma(static_cast<double>(k) + 1.0));
}

}  // namespace ergraph
