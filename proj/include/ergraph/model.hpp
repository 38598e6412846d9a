#pragma once

#include <cstdint>
#include <functional>
#include <utility>

namespace ergraph {

/// Constant connection rate: every pair connects with probability lambda/n.
struct Homogeneous {
  double lambda = 0.0;
};

/// Homogeneous rate that varies with n, e.g. lambda_n = 1 + theta*n^(-1/3).
/// Binding a schedule to a concrete n yields an ordinary homogeneous model.
struct HomogeneousSchedule {
  std::function<double(std::int64_t)> lambda_of_n;
};

/// Per-pair rates lambda_ij, with a declared upper bound sup_ij lambda_ij.
/// The bound drives the rejection sampler and must dominate every pair.
struct Inhomogeneous {
  std::function<double(std::int32_t, std::int32_t)> lambda_of_edge;  // 1-based, i < j
  double lambda_max = 0.0;
};

/// An edge-probability model on n labelled vertices: pair {i,j} is an edge
/// independently with probability lambda_ij / n.
class EdgeProbModel {
 public:
  EdgeProbModel(std::int64_t n, Homogeneous h);
  EdgeProbModel(std::int64_t n, HomogeneousSchedule s);
  EdgeProbModel(std::int64_t n, Inhomogeneous inh);

  std::int64_t n() const noexcept { return n_; }

  /// True when all pairs share one rate (homogeneous, or a schedule bound to n).
  bool uniform() const noexcept { return !rate_fn_; }

  /// Shared rate; throws std::logic_error for inhomogeneous models.
  double rate() const;

  /// Rate for pair {i,j}; requires 1 <= i < j <= n.
  double rate_at(std::int32_t i, std::int32_t j) const;

  /// sup_ij lambda_ij: exact when uniform, the declared bound otherwise.
  double rate_bound() const noexcept { return rate_bound_; }

  /// Edge probability for pair {i,j}.
  double prob_at(std::int32_t i, std::int32_t j) const {
    return rate_at(i, j) / static_cast<double>(n_);
  }

  /// Shared edge probability; throws std::logic_error for inhomogeneous models.
  double prob() const { return rate() / static_cast<double>(n_); }

  double prob_bound() const noexcept { return rate_bound_ / static_cast<double>(n_); }

 private:
  std::int64_t n_;
  double rate_bound_;                                                // sup rate
  double uniform_rate_ = 0.0;                                        // valid iff !rate_fn_
  std::function<double(std::int32_t, std::int32_t)> rate_fn_;        // empty iff uniform
};

/// A model per graph size, used by asymptotic diagnostics and experiments.
using ModelFamily = std::function<EdgeProbModel(std::int64_t)>;

}  // namespace ergraph
