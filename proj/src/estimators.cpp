#include "ordstat/estimators.hpp"

#include "ordstat/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace ordstat {
namespace {

Estimate make(double value, EstimatorId id, std::size_t n, std::optional<Family> family) {
  return Estimate{value, id, n, family};
}

[[noreturn]] void unsupported(Family family, EstimatorId id) {
  throw Error(ErrorCode::UnsupportedFamily, "estimator '" + std::string(to_string(id)) +
                                                "' is not defined for " +
                                                std::string(to_string(family)) + " noise");
}

} // namespace

std::string_view to_string(EstimatorId id) {
  switch (id) {
  case EstimatorId::Blue:
    return "blue";
  case EstimatorId::UnbiasedKnown:
    return "unbiased-known";
  case EstimatorId::UnbiasedUnknown:
    return "unbiased-unknown";
  case EstimatorId::MinOrder:
    return "min";
  case EstimatorId::MixtureRank:
    return "mixture-rank";
  }
  return "unknown";
}

std::optional<EstimatorId> parse_estimator(std::string_view name) {
  for (EstimatorId id : kAllEstimators) {
    if (to_string(id) == name) {
      return id;
    }
  }
  return std::nullopt;
}

SampleSet::SampleSet(std::vector<double> values)
    : values_(std::move(values)), ordered_(values_) {}

bool is_applicable(Family family, EstimatorId id) {
  switch (id) {
  case EstimatorId::Blue:
  case EstimatorId::MinOrder:
    return true;
  case EstimatorId::UnbiasedKnown:
    return family != Family::Mixture;
  case EstimatorId::UnbiasedUnknown:
    return family == Family::Uniform || family == Family::Exponential ||
           family == Family::Rayleigh;
  case EstimatorId::MixtureRank:
    return family == Family::Mixture;
  }
  return false;
}

std::vector<EstimatorId> applicable_estimators(Family family) {
  std::vector<EstimatorId> out;
  for (EstimatorId id : kAllEstimators) {
    if (is_applicable(family, id)) {
      out.push_back(id);
    }
  }
  return out;
}

std::optional<std::string> applicability_issue(const NoiseModel &model, EstimatorId id,
                                               std::size_t n) {
  const Family family = model.family();
  if (!is_applicable(family, id)) {
    return "estimator '" + std::string(to_string(id)) + "' is not defined for " +
           std::string(to_string(family)) + " noise";
  }
  if (n == 0) {
    return "sample size must be >= 1";
  }
  if (id == EstimatorId::UnbiasedUnknown && n < 2) {
    return "unknown-hyperparameter estimator requires N >= 2";
  }
  if (family == Family::Pareto) {
    const double shape = *model.alpha();
    if (id == EstimatorId::Blue && shape <= 1.0) {
      return "pareto BLUE requires alpha > 1 (infinite mean)";
    }
    if (id == EstimatorId::UnbiasedKnown && static_cast<double>(n) * shape <= 1.0) {
      return "pareto unbiased estimator requires N*alpha > 1";
    }
  }
  return std::nullopt;
}

Estimate blue(const NoiseModel &model, const OrderedSample &s) {
  return make(s.mean() - noise_mean(model), EstimatorId::Blue, s.size(), model.family());
}

Estimate blue(const NoiseModel &model, const SampleSet &s) { return blue(model, s.ordered()); }

Estimate min_estimator(const OrderedSample &s) {
  return make(s.min(), EstimatorId::MinOrder, s.size(), std::nullopt);
}

Estimate min_estimator(const SampleSet &s) { return min_estimator(s.ordered()); }

Estimate unbiased_known(const NoiseModel &model, const OrderedSample &s) {
  const auto n = static_cast<double>(s.size());
  const double beta = model.beta();
  double value = 0.0;
  switch (model.family()) {
  case Family::Uniform:
    value = 0.5 * (s.min() + s.max()) - 0.5 * beta;
    break;
  case Family::Exponential:
    value = s.min() - beta / n;
    break;
  case Family::Rayleigh:
    value = s.min() - std::sqrt(std::numbers::pi) * beta / std::sqrt(2.0 * n);
    break;
  case Family::Weibull: {
    const double shape = *model.alpha();
    value = s.min() - beta * std::pow(n, -1.0 / shape) * std::tgamma(1.0 + 1.0 / shape);
    break;
  }
  case Family::Pareto: {
    const double tail = n * *model.alpha();
    if (tail <= 1.0) {
      throw Error(ErrorCode::BiasUndefined,
                  "pareto unbiased estimator requires N*alpha > 1");
    }
    value = s.min() - tail * beta / (tail - 1.0);
    break;
  }
  case Family::Mixture:
    unsupported(Family::Mixture, EstimatorId::UnbiasedKnown);
  }
  return make(value, EstimatorId::UnbiasedKnown, s.size(), model.family());
}

Estimate unbiased_known(const NoiseModel &model, const SampleSet &s) {
  return unbiased_known(model, s.ordered());
}

Estimate unbiased_unknown(Family family, const OrderedSample &s) {
  if (!is_applicable(family, EstimatorId::UnbiasedUnknown)) {
    unsupported(family, EstimatorId::UnbiasedUnknown);
  }
  if (s.size() < 2) {
    throw Error(ErrorCode::DegenerateSample, "unknown-hyperparameter estimator requires N >= 2");
  }
  const auto n = static_cast<double>(s.size());
  double value = 0.0;
  switch (family) {
  case Family::Uniform:
    value = (n * s.min() - s.max()) / (n - 1.0);
    break;
  case Family::Exponential:
    value = (n * s.min() - s.mean()) / (n - 1.0);
    break;
  case Family::Rayleigh: {
    const double root = std::sqrt(n);
    value = (root * s.min() - s.mean()) / (root - 1.0);
    break;
  }
  default:
    unsupported(family, EstimatorId::UnbiasedUnknown);
  }
  return make(value, EstimatorId::UnbiasedUnknown, s.size(), family);
}

Estimate unbiased_unknown(Family family, const SampleSet &s) {
  return unbiased_unknown(family, s.ordered());
}

std::size_t mixture_rank_index(double alpha, std::size_t n) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "mixing probability must lie in [0, 1]");
  }
  if (n == 0) {
    throw Error(ErrorCode::InvalidArgument, "sample size must be >= 1");
  }
  const double half = static_cast<double>(n) * alpha / 2.0;
  // n*alpha can land a few ulps below an integer (e.g. 100 * 0.29).
  const double slack = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, half);
  return static_cast<std::size_t>(std::floor(half + slack)) + 1;
}

Estimate mixture_rank(double alpha, const OrderedSample &s) {
  const std::size_t k = mixture_rank_index(alpha, s.size());
  return make(s.at_rank(k), EstimatorId::MixtureRank, s.size(), Family::Mixture);
}

Estimate mixture_rank(double alpha, const SampleSet &s) { return mixture_rank(alpha, s.ordered()); }

double mixture_rank_likelihood(std::size_t k, std::size_t n, double alpha) {
  if (n == 0 || k == 0 || k > n) {
    throw Error(ErrorCode::InvalidArgument, "rank must satisfy 1 <= k <= n");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "mixing probability must lie in [0, 1]");
  }
  const double p = alpha / 2.0;
  const auto successes = static_cast<double>(k - 1);
  const auto failures = static_cast<double>(n - k);
  if (p == 0.0) {
    return k == 1 ? 1.0 : 0.0;
  }
  return std::exp(log_binomial(n - 1, k - 1) + successes * std::log(p) +
                  failures * std::log1p(-p));
}

Estimate estimate(EstimatorId id, const NoiseModel &model, const OrderedSample &s) {
  if (!is_applicable(model.family(), id)) {
    unsupported(model.family(), id);
  }
  switch (id) {
  case EstimatorId::Blue:
    return blue(model, s);
  case EstimatorId::UnbiasedKnown:
    return unbiased_known(model, s);
  case EstimatorId::UnbiasedUnknown:
    return unbiased_unknown(model.family(), s);
  case EstimatorId::MinOrder: {
    Estimate out = min_estimator(s);
    out.family = model.family();
    return out;
  }
  case EstimatorId::MixtureRank:
    return mixture_rank(*model.alpha(), s);
  }
  unsupported(model.family(), id);
}

} // namespace ordstat
