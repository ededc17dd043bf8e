#pragma once

#include "ordstat/noise_model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ordstat {

/// Ascending copy of a sample: y(1) <= ... <= y(N).
class OrderedSample {
public:
  /// Sorts `values`. Throws Error{InvalidArgument} when empty and
  /// Error{Domain} when any value is not finite.
  explicit OrderedSample(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }

  /// 1-based rank access, y(k).
  double at_rank(std::size_t k) const;
  double min() const noexcept { return values_.front(); }
  double max() const noexcept { return values_.back(); }
  /// Mean summed in ascending order, so it depends only on the multiset.
  double mean() const noexcept;

private:
  std::vector<double> values_;
};

/// log C(n, k) through log-gamma; exact enough for n in the thousands.
double log_binomial(std::size_t n, std::size_t k);

/// Density of the k-th smallest of n i.i.d. noise draws at e:
///   n f(e) C(n-1, k-1) F(e)^(k-1) (1 - F(e))^(n-k).
/// Throws Error{InvalidArgument} unless 1 <= k <= n.
double order_stat_pdf(const NoiseModel &model, std::size_t k, std::size_t n, double e);

/// n f(e) (1 - F(e))^(n-1); identical to order_stat_pdf(model, 1, n, e).
double min_order_pdf(const NoiseModel &model, std::size_t n, double e);

/// Same-family model for the minimum of n draws:
/// Exp(beta/n), Rayleigh(beta/sqrt(n)), Weibull(beta n^(-1/alpha), alpha),
/// Pareto(beta, n alpha). Uniform and Mixture throw Error{NoClosure}.
NoiseModel minimum_closure(const NoiseModel &model, std::size_t n);

struct Moments {
  double mean;
  double variance;
};

/// Exact mean and variance of the k-th order statistic of n U[0, beta] draws.
Moments uniform_order_moments(std::size_t k, std::size_t n, double beta);

/// Joint density of (min, max) of n draws at (u, v); zero when u >= v.
/// Throws Error{InvalidArgument} for n < 2.
double joint_extremes_pdf(const NoiseModel &model, double u, double v, std::size_t n);

} // namespace ordstat
