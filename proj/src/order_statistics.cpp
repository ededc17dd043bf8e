#include "ordstat/order_statistics.hpp"

#include "ordstat/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ordstat {
namespace {

void require_rank(std::size_t k, std::size_t n) {
  if (n == 0 || k == 0 || k > n) {
    throw Error(ErrorCode::InvalidArgument, "rank k=" + std::to_string(k) +
                                                " must satisfy 1 <= k <= n=" + std::to_string(n));
  }
}

// count * log(p) with the convention 0 * log(0) = 0.
double xlogy(double count, double p) { return count == 0.0 ? 0.0 : count * std::log(p); }

} // namespace

OrderedSample::OrderedSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "sample must contain at least one value");
  }
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::Domain, "sample values must be finite");
  }
  std::sort(values_.begin(), values_.end());
}

double OrderedSample::at_rank(std::size_t k) const {
  require_rank(k, values_.size());
  return values_[k - 1];
}

double OrderedSample::mean() const noexcept {
  double sum = 0.0;
  for (double v : values_) {
    sum += v;
  }
  return sum / static_cast<double>(values_.size());
}

double log_binomial(std::size_t n, std::size_t k) {
  if (k > n) {
    throw Error(ErrorCode::InvalidArgument, "binomial coefficient needs k <= n");
  }
  if (k == 0 || k == n) {
    return 0.0;
  }
  const auto dn = static_cast<double>(n);
  const auto dk = static_cast<double>(k);
  return std::lgamma(dn + 1.0) - std::lgamma(dk + 1.0) - std::lgamma(dn - dk + 1.0);
}

double order_stat_pdf(const NoiseModel &model, std::size_t k, std::size_t n, double e) {
  require_rank(k, n);
  const double f = noise_pdf(model, e);
  if (f == 0.0) {
    return 0.0;
  }
  const double below = noise_cdf(model, e);
  const double above = noise_survival(model, e);
  const auto lower_count = static_cast<double>(k - 1);
  const auto upper_count = static_cast<double>(n - k);
  if ((lower_count > 0.0 && below == 0.0) || (upper_count > 0.0 && above == 0.0)) {
    return 0.0;
  }
  const double log_weight = std::log(static_cast<double>(n)) + log_binomial(n - 1, k - 1) +
                            xlogy(lower_count, below) + xlogy(upper_count, above);
  return f * std::exp(log_weight);
}

double min_order_pdf(const NoiseModel &model, std::size_t n, double e) {
  return order_stat_pdf(model, 1, n, e);
}

NoiseModel minimum_closure(const NoiseModel &model, std::size_t n) {
  if (n == 0) {
    throw Error(ErrorCode::InvalidArgument, "sample size must be >= 1");
  }
  const auto dn = static_cast<double>(n);
  switch (model.family()) {
  case Family::Exponential:
    return NoiseModel::exponential(model.beta() / dn);
  case Family::Rayleigh:
    return NoiseModel::rayleigh(model.beta() / std::sqrt(dn));
  case Family::Weibull: {
    const double shape = *model.alpha();
    return NoiseModel::weibull(model.beta() * std::pow(dn, -1.0 / shape), shape);
  }
  case Family::Pareto:
    return NoiseModel::pareto(model.beta(), dn * *model.alpha());
  case Family::Uniform:
  case Family::Mixture:
    break;
  }
  throw Error(ErrorCode::NoClosure, "minimum of " + std::string(to_string(model.family())) +
                                        " noise is not in the same family");
}

Moments uniform_order_moments(std::size_t k, std::size_t n, double beta) {
  require_rank(k, n);
  if (!std::isfinite(beta) || !(beta > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "beta must be finite and > 0");
  }
  const auto dk = static_cast<double>(k);
  const auto dn = static_cast<double>(n);
  const double np1 = dn + 1.0;
  return {beta * dk / np1, dk * (dn - dk + 1.0) * beta * beta / (np1 * np1 * (dn + 2.0))};
}

double joint_extremes_pdf(const NoiseModel &model, double u, double v, std::size_t n) {
  if (n < 2) {
    throw Error(ErrorCode::InvalidArgument, "joint extremes density needs n >= 2");
  }
  if (!(u < v)) {
    return 0.0;
  }
  const double fu = noise_pdf(model, u);
  const double fv = noise_pdf(model, v);
  if (fu == 0.0 || fv == 0.0) {
    return 0.0;
  }
  const auto dn = static_cast<double>(n);
  const double spread = noise_cdf(model, v) - noise_cdf(model, u);
  return dn * (dn - 1.0) * std::pow(spread, dn - 2.0) * fu * fv;
}

} // namespace ordstat
