#pragma once

#include "ordstat/noise_model.hpp"
#include "ordstat/order_statistics.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ordstat {

enum class EstimatorId {
  Blue,            // bias-compensated sample mean
  UnbiasedKnown,   // order-statistic estimator, hyperparameters known
  UnbiasedUnknown, // order-statistic estimator, hyperparameters unknown
  MinOrder,        // y(1), biased
  MixtureRank,     // y(k) with k = floor(N alpha / 2) + 1
};

inline constexpr EstimatorId kAllEstimators[] = {
    EstimatorId::Blue, EstimatorId::UnbiasedKnown, EstimatorId::UnbiasedUnknown,
    EstimatorId::MinOrder, EstimatorId::MixtureRank};

std::string_view to_string(EstimatorId id);
std::optional<EstimatorId> parse_estimator(std::string_view name);

/// Raw measurements y_1..y_N = x + e_k, kept together with their ascending
/// order.
class SampleSet {
public:
  explicit SampleSet(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  const OrderedSample &ordered() const noexcept { return ordered_; }

private:
  std::vector<double> values_;
  OrderedSample ordered_;
};

struct Estimate {
  double value;
  EstimatorId estimator;
  std::size_t n;
  std::optional<Family> family; // unset for the family-free minimum
};

/// Whether the (family, estimator) pair appears in the estimator tables.
bool is_applicable(Family family, EstimatorId id);
std::vector<EstimatorId> applicable_estimators(Family family);

/// Reason a concrete (model, estimator, n) cell cannot produce an estimate,
/// or nullopt when it can.
std::optional<std::string> applicability_issue(const NoiseModel &model, EstimatorId id,
                                               std::size_t n);

/// mean(y) - E[e]. Pareto with alpha <= 1 throws Error{InfiniteMean}.
Estimate blue(const NoiseModel &model, const OrderedSample &s);
Estimate blue(const NoiseModel &model, const SampleSet &s);

Estimate min_estimator(const OrderedSample &s);
Estimate min_estimator(const SampleSet &s);

/// Known-hyperparameter unbiased estimators:
///   uniform      (y(1) + y(N)) / 2 - beta / 2
///   exponential  y(1) - beta / N
///   rayleigh     y(1) - sqrt(pi) beta / sqrt(2N)
///   weibull      y(1) - beta N^(-1/alpha) Gamma(1 + 1/alpha)
///   pareto       y(1) - N alpha beta / (N alpha - 1)
/// Pareto with N alpha <= 1 throws Error{BiasUndefined}; Mixture throws
/// Error{UnsupportedFamily}.
Estimate unbiased_known(const NoiseModel &model, const OrderedSample &s);
Estimate unbiased_known(const NoiseModel &model, const SampleSet &s);

/// Hyperparameter-free unbiased estimators:
///   uniform      (N y(1) - y(N)) / (N - 1)
///   exponential  (N y(1) - mean(y)) / (N - 1)
///   rayleigh     (sqrt(N) y(1) - mean(y)) / (sqrt(N) - 1)
/// N < 2 throws Error{DegenerateSample}; other families throw
/// Error{UnsupportedFamily}.
Estimate unbiased_unknown(Family family, const OrderedSample &s);
Estimate unbiased_unknown(Family family, const SampleSet &s);

/// floor(n alpha / 2) + 1, the mode of the rank likelihood.
std::size_t mixture_rank_index(double alpha, std::size_t n);

/// y(k) with k = mixture_rank_index(alpha, N).
Estimate mixture_rank(double alpha, const OrderedSample &s);
Estimate mixture_rank(double alpha, const SampleSet &s);

/// Relative likelihood of rank k when the true location sits at the mode
/// of the mixture density: C(n-1, k-1) (alpha/2)^(k-1) (1 - alpha/2)^(n-k).
double mixture_rank_likelihood(std::size_t k, std::size_t n, double alpha);

/// Dispatch by id. Mixture rank reads alpha from the model; inapplicable
/// combinations throw Error{UnsupportedFamily}.
Estimate estimate(EstimatorId id, const NoiseModel &model, const OrderedSample &s);

} // namespace ordstat
