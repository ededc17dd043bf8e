#pragma once

#include "ordstat/rng.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace ordstat {

enum class Family { Uniform, Exponential, Rayleigh, Weibull, Pareto, Mixture };

inline constexpr Family kAllFamilies[] = {Family::Uniform, Family::Exponential,
                                          Family::Rayleigh, Family::Weibull,
                                          Family::Pareto,  Family::Mixture};

std::string_view to_string(Family family);
std::optional<Family> parse_family(std::string_view name);

// Hyperparameter sets. Noise values e = y - x are the arguments of every
// density below; the location x is never part of a model.

/// U[0, beta].
struct UniformNoise {
  double beta;
};
/// Scale parameterisation: mean beta.
struct ExponentialNoise {
  double beta;
};
/// f(e) = e / beta^2 * exp(-e^2 / (2 beta^2)).
struct RayleighNoise {
  double beta;
};
/// Scale beta, shape alpha.
struct WeibullNoise {
  double beta;
  double alpha;
};
/// Type I Pareto with support [beta, inf) and tail index alpha.
struct ParetoNoise {
  double beta;
  double alpha;
};
/// alpha * N(0, sigma^2) + (1 - alpha) * U[0, beta]. The normal component
/// is not truncated.
struct MixtureNoise {
  double alpha;
  double sigma;
  double beta;
};

/// One of the six supported noise distributions with validated parameters.
class NoiseModel {
public:
  using Params = std::variant<UniformNoise, ExponentialNoise, RayleighNoise,
                              WeibullNoise, ParetoNoise, MixtureNoise>;

  /// Throws Error{InvalidArgument} unless every scale/shape is finite and
  /// strictly positive and the mixing probability lies in [0, 1].
  explicit NoiseModel(Params params);

  static NoiseModel uniform(double beta) { return NoiseModel(UniformNoise{beta}); }
  static NoiseModel exponential(double beta) {
    return NoiseModel(ExponentialNoise{beta});
  }
  static NoiseModel rayleigh(double beta) { return NoiseModel(RayleighNoise{beta}); }
  static NoiseModel weibull(double beta, double alpha) {
    return NoiseModel(WeibullNoise{beta, alpha});
  }
  static NoiseModel pareto(double beta, double alpha) {
    return NoiseModel(ParetoNoise{beta, alpha});
  }
  static NoiseModel mixture(double alpha, double sigma, double beta) {
    return NoiseModel(MixtureNoise{alpha, sigma, beta});
  }

  Family family() const noexcept { return static_cast<Family>(params_.index()); }
  const Params &params() const noexcept { return params_; }

  /// Scale / width parameter; present for every family.
  double beta() const noexcept;
  /// Shape (Weibull, Pareto) or mixing probability (Mixture).
  std::optional<double> alpha() const noexcept;
  /// Normal std-dev of the mixture.
  std::optional<double> sigma() const noexcept;

  friend bool operator==(const NoiseModel &a, const NoiseModel &b);

private:
  Params params_;
};

bool operator==(const NoiseModel &a, const NoiseModel &b);

/// Density of the noise at e. Throws Error{Domain} for non-finite e.
double noise_pdf(const NoiseModel &model, double e);
/// P(noise <= e). Throws Error{Domain} for non-finite e.
double noise_cdf(const NoiseModel &model, double e);
/// P(noise > e), evaluated from the closed form rather than 1 - cdf.
double noise_survival(const NoiseModel &model, double e);

/// Inverse cdf for p in [0, 1). Mixture has no closed-form quantile and
/// throws Error{UnsupportedFamily}.
double noise_quantile(const NoiseModel &model, double p);

/// E[e], the bias compensation term of the sample mean.
/// Pareto with alpha <= 1 throws Error{InfiniteMean}.
double noise_mean(const NoiseModel &model);

/// Var[e]. Pareto with alpha <= 2 throws Error{InfiniteVariance}.
double noise_variance(const NoiseModel &model);

/// One draw: inverse transform for the five closed-form families; the
/// mixture picks its component first, then draws from it.
double draw_noise(const NoiseModel &model, Rng &rng);

void sample_noise(const NoiseModel &model, Rng &rng, std::span<double> out);
std::vector<double> sample_noise(const NoiseModel &model, std::size_t n, Rng &rng);

} // namespace ordstat
