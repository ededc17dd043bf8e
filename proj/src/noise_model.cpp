#include "ordstat/noise_model.hpp"

#include "ordstat/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ordstat {
namespace {

template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684758586311649;

void require_positive(double value, const char *name) {
  if (!std::isfinite(value) || !(value > 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(name) + " must be finite and > 0, got " +
                    std::to_string(value));
  }
}

void require_finite(double e) {
  if (!std::isfinite(e)) {
    throw Error(ErrorCode::Domain, "noise value must be finite");
  }
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

} // namespace

std::string_view to_string(Family family) {
  switch (family) {
  case Family::Uniform:
    return "uniform";
  case Family::Exponential:
    return "exponential";
  case Family::Rayleigh:
    return "rayleigh";
  case Family::Weibull:
    return "weibull";
  case Family::Pareto:
    return "pareto";
  case Family::Mixture:
    return "mixture";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (to_string(f) == name) {
      return f;
    }
  }
  return std::nullopt;
}

NoiseModel::NoiseModel(Params params) : params_(params) {
  std::visit(overloaded{
                 [](const UniformNoise &p) { require_positive(p.beta, "uniform beta"); },
                 [](const ExponentialNoise &p) {
                   require_positive(p.beta, "exponential beta");
                 },
                 [](const RayleighNoise &p) { require_positive(p.beta, "rayleigh beta"); },
                 [](const WeibullNoise &p) {
                   require_positive(p.beta, "weibull beta");
                   require_positive(p.alpha, "weibull alpha");
                 },
                 [](const ParetoNoise &p) {
                   require_positive(p.beta, "pareto beta");
                   require_positive(p.alpha, "pareto alpha");
                 },
                 [](const MixtureNoise &p) {
                   if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) {
                     throw Error(ErrorCode::InvalidArgument,
                                 "mixture alpha must lie in [0, 1], got " +
                                     std::to_string(p.alpha));
                   }
                   require_positive(p.sigma, "mixture sigma");
                   require_positive(p.beta, "mixture beta");
                 },
             },
             params_);
}

double NoiseModel::beta() const noexcept {
  return std::visit([](const auto &p) { return p.beta; }, params_);
}

std::optional<double> NoiseModel::alpha() const noexcept {
  return std::visit(overloaded{
                        [](const WeibullNoise &p) -> std::optional<double> { return p.alpha; },
                        [](const ParetoNoise &p) -> std::optional<double> { return p.alpha; },
                        [](const MixtureNoise &p) -> std::optional<double> { return p.alpha; },
                        [](const auto &) -> std::optional<double> { return std::nullopt; },
                    },
                    params_);
}

std::optional<double> NoiseModel::sigma() const noexcept {
  if (const auto *m = std::get_if<MixtureNoise>(&params_)) {
    return m->sigma;
  }
  return std::nullopt;
}

bool operator==(const NoiseModel &a, const NoiseModel &b) {
  return a.family() == b.family() && a.beta() == b.beta() && a.alpha() == b.alpha() &&
         a.sigma() == b.sigma();
}

double noise_pdf(const NoiseModel &model, double e) {
  require_finite(e);
  return std::visit(
      overloaded{
          [e](const UniformNoise &p) { return (e >= 0.0 && e <= p.beta) ? 1.0 / p.beta : 0.0; },
          [e](const ExponentialNoise &p) {
            return e >= 0.0 ? std::exp(-e / p.beta) / p.beta : 0.0;
          },
          [e](const RayleighNoise &p) {
            if (e < 0.0) {
              return 0.0;
            }
            const double z = e / p.beta;
            return z / p.beta * std::exp(-0.5 * z * z);
          },
          [e](const WeibullNoise &p) {
            if (e < 0.0) {
              return 0.0;
            }
            const double z = e / p.beta;
            if (z == 0.0) {
              return p.alpha / p.beta * std::pow(z, p.alpha - 1.0);
            }
            const double log_z = std::log(z);
            return p.alpha / p.beta * std::exp((p.alpha - 1.0) * log_z - std::exp(p.alpha * log_z));
          },
          [e](const ParetoNoise &p) {
            return e >= p.beta ? p.alpha / p.beta * std::pow(p.beta / e, p.alpha + 1.0) : 0.0;
          },
          [e](const MixtureNoise &p) {
            const double z = e / p.sigma;
            const double normal = kInvSqrt2Pi / p.sigma * std::exp(-0.5 * z * z);
            const double uniform = (e >= 0.0 && e <= p.beta) ? 1.0 / p.beta : 0.0;
            return p.alpha * normal + (1.0 - p.alpha) * uniform;
          },
      },
      model.params());
}

double noise_cdf(const NoiseModel &model, double e) {
  require_finite(e);
  return std::visit(
      overloaded{
          [e](const UniformNoise &p) { return clamp01(e / p.beta); },
          [e](const ExponentialNoise &p) { return e > 0.0 ? -std::expm1(-e / p.beta) : 0.0; },
          [e](const RayleighNoise &p) {
            const double z = e / p.beta;
            return e > 0.0 ? -std::expm1(-0.5 * z * z) : 0.0;
          },
          [e](const WeibullNoise &p) {
            return e > 0.0 ? -std::expm1(-std::pow(e / p.beta, p.alpha)) : 0.0;
          },
          [e](const ParetoNoise &p) {
            return e > p.beta ? -std::expm1(p.alpha * std::log(p.beta / e)) : 0.0;
          },
          [e](const MixtureNoise &p) {
            return p.alpha * std_normal_cdf(e / p.sigma) + (1.0 - p.alpha) * clamp01(e / p.beta);
          },
      },
      model.params());
}

double noise_survival(const NoiseModel &model, double e) {
  require_finite(e);
  return std::visit(
      overloaded{
          [e](const UniformNoise &p) { return clamp01((p.beta - e) / p.beta); },
          [e](const ExponentialNoise &p) { return e > 0.0 ? std::exp(-e / p.beta) : 1.0; },
          [e](const RayleighNoise &p) {
            const double z = e / p.beta;
            return e > 0.0 ? std::exp(-0.5 * z * z) : 1.0;
          },
          [e](const WeibullNoise &p) {
            return e > 0.0 ? std::exp(-std::pow(e / p.beta, p.alpha)) : 1.0;
          },
          [e](const ParetoNoise &p) { return e > p.beta ? std::pow(p.beta / e, p.alpha) : 1.0; },
          [e](const MixtureNoise &p) {
            return p.alpha * std_normal_cdf(-e / p.sigma) +
                   (1.0 - p.alpha) * clamp01((p.beta - e) / p.beta);
          },
      },
      model.params());
}

double noise_quantile(const NoiseModel &model, double p) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw Error(ErrorCode::Domain, "quantile probability must lie in [0, 1)");
  }
  return std::visit(
      overloaded{
          [p](const UniformNoise &m) { return m.beta * p; },
          [p](const ExponentialNoise &m) { return -m.beta * std::log1p(-p); },
          [p](const RayleighNoise &m) { return m.beta * std::sqrt(-2.0 * std::log1p(-p)); },
          [p](const WeibullNoise &m) {
            return m.beta * std::pow(-std::log1p(-p), 1.0 / m.alpha);
          },
          [p](const ParetoNoise &m) { return m.beta * std::pow(1.0 - p, -1.0 / m.alpha); },
          [](const MixtureNoise &) -> double {
            throw Error(ErrorCode::UnsupportedFamily, "mixture has no closed-form quantile");
          },
      },
      model.params());
}

double noise_mean(const NoiseModel &model) {
  return std::visit(
      overloaded{
          [](const UniformNoise &p) { return 0.5 * p.beta; },
          [](const ExponentialNoise &p) { return p.beta; },
          [](const RayleighNoise &p) { return std::sqrt(0.5 * std::numbers::pi) * p.beta; },
          [](const WeibullNoise &p) { return p.beta * std::tgamma(1.0 + 1.0 / p.alpha); },
          [](const ParetoNoise &p) {
            if (p.alpha <= 1.0) {
              throw Error(ErrorCode::InfiniteMean, "pareto mean is infinite for alpha <= 1");
            }
            return p.alpha * p.beta / (p.alpha - 1.0);
          },
          [](const MixtureNoise &p) { return 0.5 * (1.0 - p.alpha) * p.beta; },
      },
      model.params());
}

double noise_variance(const NoiseModel &model) {
  return std::visit(
      overloaded{
          [](const UniformNoise &p) { return p.beta * p.beta / 12.0; },
          [](const ExponentialNoise &p) { return p.beta * p.beta; },
          [](const RayleighNoise &p) { return 0.5 * (4.0 - std::numbers::pi) * p.beta * p.beta; },
          [](const WeibullNoise &p) {
            const double g1 = std::tgamma(1.0 + 1.0 / p.alpha);
            const double g2 = std::tgamma(1.0 + 2.0 / p.alpha);
            return p.beta * p.beta * (g2 - g1 * g1);
          },
          [](const ParetoNoise &p) {
            if (p.alpha <= 2.0) {
              throw Error(ErrorCode::InfiniteVariance,
                          "pareto variance is infinite for alpha <= 2");
            }
            const double am1 = p.alpha - 1.0;
            return p.alpha * p.beta * p.beta / (am1 * am1 * (p.alpha - 2.0));
          },
          [](const MixtureNoise &p) {
            const double a = p.alpha;
            return (p.beta * p.beta * (1.0 + (2.0 - 3.0 * a) * a) + 12.0 * a * p.sigma * p.sigma) /
                   12.0;
          },
      },
      model.params());
}

double draw_noise(const NoiseModel &model, Rng &rng) {
  if (const auto *m = std::get_if<MixtureNoise>(&model.params())) {
    if (rng.uniform() < m->alpha) {
      return m->sigma * rng.normal();
    }
    return m->beta * rng.uniform();
  }
  return noise_quantile(model, rng.uniform());
}

void sample_noise(const NoiseModel &model, Rng &rng, std::span<double> out) {
  for (double &v : out) {
    v = draw_noise(model, rng);
  }
}

std::vector<double> sample_noise(const NoiseModel &model, std::size_t n, Rng &rng) {
  if (n == 0) {
    throw Error(ErrorCode::InvalidArgument, "sample size must be >= 1");
  }
  std::vector<double> out(n);
  sample_noise(model, rng, out);
  return out;
}

} // namespace ordstat
