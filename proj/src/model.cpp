#include "ergraph/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ergraph {

namespace {

void check_rate(double lambda, std::int64_t n, const char* what) {
  if (!std::isfinite(lambda) || lambda < 0.0 || lambda > static_cast<double>(n)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, n], got " +
                                std::to_string(lambda) + " with n = " + std::to_string(n));
  }
}

void check_n(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("vertex count must be positive, got " + std::to_string(n));
}

}  // namespace

EdgeProbModel::EdgeProbModel(std::int64_t n, Homogeneous h)
    : n_(n), rate_bound_(h.lambda), uniform_rate_(h.lambda) {
  check_n(n);
  check_rate(h.lambda, n, "rate lambda");
}

EdgeProbModel::EdgeProbModel(std::int64_t n, HomogeneousSchedule s) : n_(n), rate_bound_(0.0) {
  check_n(n);
  if (!s.lambda_of_n) throw std::invalid_argument("schedule has no rate function");
  uniform_rate_ = s.lambda_of_n(n);
  check_rate(uniform_rate_, n, "schedule rate lambda_n");
  rate_bound_ = uniform_rate_;
}

EdgeProbModel::EdgeProbModel(std::int64_t n, Inhomogeneous inh)
    : n_(n), rate_bound_(inh.lambda_max), rate_fn_(std::move(inh.lambda_of_edge)) {
  check_n(n);
  if (!rate_fn_) throw std::invalid_argument("inhomogeneous model has no rate function");
  check_rate(rate_bound_, n, "rate bound lambda_max");
}

double EdgeProbModel::rate() const {
  if (!uniform()) throw std::logic_error("rate() called on an inhomogeneous model");
  return uniform_rate_;
}

double EdgeProbModel::rate_at(std::int32_t i, std::int32_t j) const {
  if (i < 1 || j <= i || j > n_) {
    throw std::invalid_argument("pair {" + std::to_string(i) + "," + std::to_string(j) +
                                "} is not a vertex pair of an n = " + std::to_string(n_) + " model");
  }
  if (!rate_fn_) return uniform_rate_;
  const double lambda = rate_fn_(i, j);
  if (!std::isfinite(lambda) || lambda < 0.0 || lambda > rate_bound_) {
    throw std::domain_error("rate at {" + std::to_string(i) + "," + std::to_string(j) + "} is " +
                            std::to_string(lambda) + ", outside [0, lambda_max = " +
                            std::to_string(rate_bound_) + "]");
  }
  return lambda;
}

}  // namespace ergraph
