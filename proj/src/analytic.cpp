#include "ordstat/analytic.hpp"

#include "ordstat/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ordstat {
namespace {

constexpr double kPi = std::numbers::pi;

void require_valid(const NoiseModel &model, EstimatorId id, std::size_t n) {
  if (!is_applicable(model.family(), id)) {
    throw Error(ErrorCode::UnsupportedFamily, "estimator '" + std::string(to_string(id)) +
                                                  "' is not defined for " +
                                                  std::string(to_string(model.family())) +
                                                  " noise");
  }
  if (n == 0) {
    throw Error(ErrorCode::InvalidArgument, "sample size must be >= 1");
  }
}

// Shared preconditions whose failure makes both bias and MSE undefined.
std::optional<AnalyticValue> undefined_location(const NoiseModel &model, EstimatorId id,
                                                std::size_t n) {
  const auto dn = static_cast<double>(n);
  if (id == EstimatorId::UnbiasedUnknown && n < 2) {
    return AnalyticValue::unavailable("degenerate-sample: requires N >= 2");
  }
  if (id == EstimatorId::MixtureRank) {
    return AnalyticValue::unavailable("unknown: no closed form for the mixture rank estimator");
  }
  if (model.family() == Family::Mixture && id == EstimatorId::MinOrder) {
    return AnalyticValue::unavailable("unknown: no closed form for the mixture minimum");
  }
  if (model.family() == Family::Pareto) {
    const double shape = *model.alpha();
    if (id == EstimatorId::Blue && shape <= 1.0) {
      return AnalyticValue::unavailable("infinite-mean: pareto alpha <= 1");
    }
    if ((id == EstimatorId::UnbiasedKnown || id == EstimatorId::MinOrder) && dn * shape <= 1.0) {
      return AnalyticValue::unavailable("infinite-mean: pareto N*alpha <= 1");
    }
  }
  return std::nullopt;
}

double min_bias(const NoiseModel &model, double n) {
  const double beta = model.beta();
  switch (model.family()) {
  case Family::Uniform:
    return beta / (n + 1.0);
  case Family::Exponential:
    return beta / n;
  case Family::Rayleigh:
    return std::sqrt(kPi) * beta / std::sqrt(2.0 * n);
  case Family::Weibull: {
    const double shape = *model.alpha();
    return beta * std::pow(n, -1.0 / shape) * std::tgamma(1.0 + 1.0 / shape);
  }
  case Family::Pareto: {
    const double tail = n * *model.alpha();
    return tail * beta / (tail - 1.0);
  }
  case Family::Mixture:
    break;
  }
  throw Error(ErrorCode::UnsupportedFamily, "no closed-form minimum bias");
}

AnalyticValue min_mse(const NoiseModel &model, double n) {
  const double b2 = model.beta() * model.beta();
  switch (model.family()) {
  case Family::Uniform:
    return AnalyticValue::of(2.0 * b2 / ((n + 1.0) * (n + 2.0)));
  case Family::Exponential:
    return AnalyticValue::of(2.0 * b2 / (n * n));
  case Family::Rayleigh:
    return AnalyticValue::of(2.0 * b2 / n);
  case Family::Weibull: {
    const double shape = *model.alpha();
    return AnalyticValue::of(b2 * std::pow(n, -2.0 / shape) * std::tgamma(1.0 + 2.0 / shape));
  }
  case Family::Pareto: {
    const double tail = n * *model.alpha();
    if (tail <= 2.0) {
      return AnalyticValue::unavailable("infinite-variance: pareto N*alpha <= 2");
    }
    return AnalyticValue::of(tail * b2 / (tail - 2.0));
  }
  case Family::Mixture:
    break;
  }
  throw Error(ErrorCode::UnsupportedFamily, "no closed-form minimum MSE");
}

AnalyticValue unbiased_known_mse(const NoiseModel &model, double n) {
  const double b2 = model.beta() * model.beta();
  switch (model.family()) {
  case Family::Uniform:
    return AnalyticValue::of(b2 / (2.0 * n * (n + 3.0) + 4.0));
  case Family::Exponential:
    return AnalyticValue::of(b2 / (n * n));
  case Family::Rayleigh:
    return AnalyticValue::of((4.0 - kPi) * b2 / (2.0 * n));
  case Family::Weibull: {
    const double shape = *model.alpha();
    const double g1 = std::tgamma(1.0 + 1.0 / shape);
    const double g2 = std::tgamma(1.0 + 2.0 / shape);
    return AnalyticValue::of(b2 * std::pow(n, -2.0 / shape) * (g2 - g1 * g1));
  }
  case Family::Pareto: {
    const double tail = n * *model.alpha();
    if (tail <= 2.0) {
      return AnalyticValue::unavailable("infinite-variance: pareto N*alpha <= 2");
    }
    return AnalyticValue::of(tail * b2 / ((tail - 1.0) * (tail - 1.0) * (tail - 2.0)));
  }
  case Family::Mixture:
    break;
  }
  throw Error(ErrorCode::UnsupportedFamily, "no unbiased known-hyperparameter estimator");
}

AnalyticValue unbiased_unknown_mse(const NoiseModel &model, double n) {
  const double b2 = model.beta() * model.beta();
  switch (model.family()) {
  case Family::Uniform:
    return AnalyticValue::of(n * b2 / ((n + 2.0) * (n * n - 1.0)));
  case Family::Exponential:
    return AnalyticValue::of((n + 1.0) * b2 / (n * (n - 1.0) * (n - 1.0)));
  case Family::Rayleigh: {
    const double root_m1 = std::sqrt(n) - 1.0;
    return AnalyticValue::of((1.0 + n) * (4.0 - kPi) * b2 / (2.0 * n * root_m1 * root_m1));
  }
  default:
    break;
  }
  throw Error(ErrorCode::UnsupportedFamily, "no unbiased unknown-hyperparameter estimator");
}

} // namespace

bool is_asymptotic(Family family, EstimatorId id) {
  return id == EstimatorId::UnbiasedUnknown &&
         (family == Family::Exponential || family == Family::Rayleigh);
}

AnalyticValue analytic_bias(const NoiseModel &model, EstimatorId id, std::size_t n) {
  require_valid(model, id, n);
  if (auto missing = undefined_location(model, id, n)) {
    return *missing;
  }
  if (id == EstimatorId::MinOrder) {
    return AnalyticValue::of(min_bias(model, static_cast<double>(n)));
  }
  return AnalyticValue::of(0.0);
}

AnalyticValue analytic_mse(const NoiseModel &model, EstimatorId id, std::size_t n) {
  require_valid(model, id, n);
  if (auto missing = undefined_location(model, id, n)) {
    return *missing;
  }
  const auto dn = static_cast<double>(n);
  switch (id) {
  case EstimatorId::Blue:
    try {
      return AnalyticValue::of(noise_variance(model) / dn);
    } catch (const Error &e) {
      return AnalyticValue::unavailable("infinite-variance: " + std::string(e.what()));
    }
  case EstimatorId::UnbiasedKnown:
    return unbiased_known_mse(model, dn);
  case EstimatorId::UnbiasedUnknown:
    return unbiased_unknown_mse(model, dn);
  case EstimatorId::MinOrder:
    return min_mse(model, dn);
  case EstimatorId::MixtureRank:
    break;
  }
  return AnalyticValue::unavailable("unknown");
}

PerfFormula perf_formula(const NoiseModel &model, EstimatorId id, std::size_t n) {
  return PerfFormula{model.family(),           id, n, analytic_bias(model, id, n),
                     analytic_mse(model, id, n), is_asymptotic(model.family(), id)};
}

} // namespace ordstat
