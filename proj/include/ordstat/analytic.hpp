#pragma once

#include "ordstat/estimators.hpp"
#include "ordstat/noise_model.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace ordstat {

/// A closed-form quantity that may not exist for the given parameters
/// (infinite moments, or no known expression).
class AnalyticValue {
public:
  static AnalyticValue of(double value) { return AnalyticValue(value, {}); }
  static AnalyticValue unavailable(std::string reason) {
    return AnalyticValue(std::nullopt, std::move(reason));
  }

  bool available() const noexcept { return value_.has_value(); }
  /// Throws std::bad_optional_access when unavailable.
  double value() const { return value_.value(); }
  const std::optional<double> &get() const noexcept { return value_; }
  const std::string &reason() const noexcept { return reason_; }

private:
  AnalyticValue(std::optional<double> value, std::string reason)
      : value_(value), reason_(std::move(reason)) {}

  std::optional<double> value_;
  std::string reason_;
};

struct PerfFormula {
  Family family;
  EstimatorId estimator;
  std::size_t n;
  AnalyticValue bias;
  AnalyticValue mse;
  /// Set for formulas that only hold for large N.
  bool asymptotic;
};

/// True for the exponential and Rayleigh unknown-hyperparameter MSEs, which
/// are derived assuming the minimum and the mean are independent.
bool is_asymptotic(Family family, EstimatorId id);

/// Bias of the estimator; zero for the unbiased ones.
/// Throws Error{UnsupportedFamily} for an invalid (family, estimator) pair.
AnalyticValue analytic_bias(const NoiseModel &model, EstimatorId id, std::size_t n);

/// Mean squared error of the estimator.
/// Throws Error{UnsupportedFamily} for an invalid (family, estimator) pair.
AnalyticValue analytic_mse(const NoiseModel &model, EstimatorId id, std::size_t n);

PerfFormula perf_formula(const NoiseModel &model, EstimatorId id, std::size_t n);

} // namespace ordstat
