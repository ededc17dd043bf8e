#include "ordstat/harness.hpp"

#include "ordstat/analytic.hpp"
#include "ordstat/error.hpp"
#include "ordstat/order_statistics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace ordstat {
namespace {

template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

void check_range(const DrawRange &r, const char *name) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
    throw Error(ErrorCode::InvalidArgument, std::string("invalid draw range for ") + name);
  }
}

double draw_in(const DrawRange &r, Rng &rng) {
  return r.lo == r.hi ? r.lo : rng.uniform(r.lo, r.hi);
}

double average(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) {
    sum += x;
  }
  return sum / static_cast<double>(xs.size());
}

// Mean of a per-replicate analytic quantity; unavailable if any replicate's is.
std::optional<double> averaged_analytic(const std::vector<NoiseModel> &models, EstimatorId id,
                                        std::size_t n, bool want_mse) {
  double sum = 0.0;
  for (const NoiseModel &m : models) {
    const AnalyticValue v = want_mse ? analytic_mse(m, id, n) : analytic_bias(m, id, n);
    if (!v.available()) {
      return std::nullopt;
    }
    sum += v.value();
  }
  return sum / static_cast<double>(models.size());
}

std::optional<double> averaged_param(const std::vector<NoiseModel> &models,
                                     std::optional<double> (NoiseModel::*get)() const noexcept) {
  if (!(models.front().*get)()) {
    return std::nullopt;
  }
  double sum = 0.0;
  for (const NoiseModel &m : models) {
    sum += *(m.*get)();
  }
  return sum / static_cast<double>(models.size());
}

} // namespace

HyperDraw HyperDraw::defaults(Family family, double mixture_alpha) {
  switch (family) {
  case Family::Uniform:
    return {family, {6.0, 50.0}, std::nullopt, std::nullopt};
  case Family::Exponential:
    return {family, {5.0, 14.0}, std::nullopt, std::nullopt};
  case Family::Rayleigh:
    return {family, {5.0, 12.0}, std::nullopt, std::nullopt};
  case Family::Weibull:
    return {family, {1.0, 1.0}, DrawRange{5.0, 10.0}, std::nullopt};
  case Family::Pareto:
    return {family, {6.0, 6.0}, DrawRange{2.1, 2.5}, std::nullopt};
  case Family::Mixture:
    return {family, {1.0, 50.0}, DrawRange{mixture_alpha, mixture_alpha}, DrawRange{1.0, 9.0}};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

void HyperDraw::validate() const {
  check_range(beta, "beta");
  const bool needs_alpha =
      family == Family::Weibull || family == Family::Pareto || family == Family::Mixture;
  if (needs_alpha != alpha.has_value()) {
    throw Error(ErrorCode::InvalidArgument,
                std::string("alpha range mismatch for ") + std::string(to_string(family)));
  }
  if ((family == Family::Mixture) != sigma.has_value()) {
    throw Error(ErrorCode::InvalidArgument,
                std::string("sigma range mismatch for ") + std::string(to_string(family)));
  }
  if (alpha) {
    check_range(*alpha, "alpha");
  }
  if (sigma) {
    check_range(*sigma, "sigma");
  }
  // Construct the range endpoints to validate parameter domains.
  Rng probe(0, 0);
  HyperDraw lo = *this;
  lo.beta.hi = beta.lo;
  if (alpha) {
    lo.alpha->hi = alpha->lo;
  }
  if (sigma) {
    lo.sigma->hi = sigma->lo;
  }
  (void)lo.draw(probe);
  HyperDraw hi = *this;
  hi.beta.lo = beta.hi;
  if (alpha) {
    hi.alpha->lo = alpha->hi;
  }
  if (sigma) {
    hi.sigma->lo = sigma->hi;
  }
  (void)hi.draw(probe);
}

NoiseModel HyperDraw::draw(Rng &rng) const {
  switch (family) {
  case Family::Uniform:
    return NoiseModel::uniform(draw_in(beta, rng));
  case Family::Exponential:
    return NoiseModel::exponential(draw_in(beta, rng));
  case Family::Rayleigh:
    return NoiseModel::rayleigh(draw_in(beta, rng));
  case Family::Weibull: {
    const double b = draw_in(beta, rng);
    return NoiseModel::weibull(b, draw_in(*alpha, rng));
  }
  case Family::Pareto: {
    const double b = draw_in(beta, rng);
    return NoiseModel::pareto(b, draw_in(*alpha, rng));
  }
  case Family::Mixture: {
    const double a = draw_in(*alpha, rng);
    const double s = draw_in(*sigma, rng);
    return NoiseModel::mixture(a, s, draw_in(beta, rng));
  }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

Family family_of(const FamilySpec &spec) {
  return std::visit(overloaded{[](const NoiseModel &m) { return m.family(); },
                               [](const HyperDraw &d) { return d.family; }},
                    spec);
}

void ExperimentConfig::validate() const {
  if (families.empty()) {
    throw Error(ErrorCode::InvalidArgument, "at least one family is required");
  }
  for (const FamilySpec &spec : families) {
    if (const auto *d = std::get_if<HyperDraw>(&spec)) {
      d->validate();
    }
  }
  if (n_grid.empty()) {
    throw Error(ErrorCode::InvalidArgument, "n_grid must not be empty");
  }
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 2 || n_grid[i] > 2000) {
      throw Error(ErrorCode::InvalidArgument,
                  "sample sizes must lie in [2, 2000], got " + std::to_string(n_grid[i]));
    }
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "n_grid must be strictly ascending");
    }
  }
  if (mc_runs < 2) {
    throw Error(ErrorCode::InvalidArgument, "mc_runs must be >= 2");
  }
}

std::vector<std::size_t> default_n_grid() {
  std::vector<std::size_t> grid = {2, 3, 5, 10, 20, 50, 100, 200, 500, 1000, 2000};
  for (std::size_t n = 190; n <= 210; ++n) {
    grid.push_back(n);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

EmpiricalMoments empirical_moments(std::span<const double> estimates, double true_x) {
  if (estimates.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "empirical moments need at least two estimates");
  }
  if (!std::all_of(estimates.begin(), estimates.end(),
                   [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::Domain, "estimates must be finite");
  }
  const double mean = average(estimates);
  double ss = 0.0;
  for (double v : estimates) {
    const double d = v - mean;
    ss += d * d;
  }
  const double variance = ss / static_cast<double>(estimates.size());
  const double bias = mean - true_x;
  return {bias, variance, variance + bias * bias};
}

std::uint64_t cell_stream_id(Family family, EstimatorId id, std::size_t n, bool common_noise) {
  std::uint64_t key = combine_keys(static_cast<std::uint64_t>(family) + 1, n);
  if (!common_noise) {
    key = combine_keys(key, static_cast<std::uint64_t>(id) + 1);
  }
  return key;
}

CellSimulation simulate_cell(const FamilySpec &spec, EstimatorId id, std::size_t n,
                             std::size_t mc_runs, const Rng &cell_rng, double true_x) {
  if (n == 0 || mc_runs == 0) {
    throw Error(ErrorCode::InvalidArgument, "cell needs n >= 1 and mc_runs >= 1");
  }
  const auto *fixed = std::get_if<NoiseModel>(&spec);
  const auto *ranges = std::get_if<HyperDraw>(&spec);

  CellSimulation out;
  out.estimates.reserve(mc_runs);
  if (fixed) {
    out.models.push_back(*fixed);
  } else {
    out.models.reserve(mc_runs);
  }

  std::vector<double> y(n);
  for (std::size_t r = 0; r < mc_runs; ++r) {
    Rng rng = cell_rng.substream(r);
    const NoiseModel model = fixed ? *fixed : ranges->draw(rng);
    sample_noise(model, rng, y);
    for (double &v : y) {
      v += true_x;
    }
    out.estimates.push_back(estimate(id, model, OrderedSample(y)).value);
    if (!fixed) {
      out.models.push_back(model);
    }
  }
  return out;
}

CellResult run_cell(const FamilySpec &spec, EstimatorId id, std::size_t n, std::size_t mc_runs,
                    const Rng &cell_rng, double true_x) {
  const Family family = family_of(spec);
  if (const auto *fixed = std::get_if<NoiseModel>(&spec)) {
    if (auto issue = applicability_issue(*fixed, id, n)) {
      return SkippedCell{family, id, n, *issue};
    }
  } else if (!is_applicable(family, id)) {
    return SkippedCell{family, id, n,
                       "estimator '" + std::string(to_string(id)) + "' is not defined for " +
                           std::string(to_string(family)) + " noise"};
  }

  CellSimulation sim;
  try {
    sim = simulate_cell(spec, id, n, mc_runs, cell_rng, true_x);
  } catch (const Error &e) {
    return SkippedCell{family, id, n, e.what()};
  }

  const EmpiricalMoments moments = empirical_moments(sim.estimates, true_x);
  PerfRecord rec{};
  rec.family = family;
  rec.estimator = id;
  rec.n = n;
  rec.mc_runs = mc_runs;
  rec.seed = cell_rng.seed();
  std::vector<double> betas;
  betas.reserve(sim.models.size());
  for (const NoiseModel &m : sim.models) {
    betas.push_back(m.beta());
  }
  rec.beta = average(betas);
  rec.alpha = averaged_param(sim.models, &NoiseModel::alpha);
  rec.sigma = averaged_param(sim.models, &NoiseModel::sigma);
  rec.true_x = true_x;
  rec.analytic_bias = averaged_analytic(sim.models, id, n, false);
  rec.analytic_mse = averaged_analytic(sim.models, id, n, true);
  rec.emp_bias = moments.bias;
  rec.emp_var = moments.variance;
  rec.emp_mse = moments.mse;
  return rec;
}

SweepResult run_sweep(const ExperimentConfig &cfg) {
  cfg.validate();

  struct Task {
    const FamilySpec *spec;
    EstimatorId id;
    std::size_t n;
  };
  std::vector<Task> tasks;
  for (const FamilySpec &spec : cfg.families) {
    const Family family = family_of(spec);
    const std::vector<EstimatorId> ids =
        cfg.estimators.empty() ? applicable_estimators(family) : cfg.estimators;
    for (EstimatorId id : ids) {
      for (std::size_t n : cfg.n_grid) {
        tasks.push_back({&spec, id, n});
      }
    }
  }

  std::vector<std::optional<CellResult>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task &t = tasks[i];
      const Rng cell_rng(cfg.master_seed,
                         cell_stream_id(family_of(*t.spec), t.id, t.n, cfg.common_noise));
      results[i] = run_cell(*t.spec, t.id, t.n, cfg.mc_runs, cell_rng, cfg.true_x);
    }
  };

  unsigned threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }

  SweepResult out;
  for (auto &r : results) {
    std::visit(overloaded{[&](PerfRecord &rec) { out.records.push_back(std::move(rec)); },
                          [&](SkippedCell &skip) { out.skipped.push_back(std::move(skip)); }},
               *r);
  }
  return out;
}

std::vector<EcdfPoint> ecdf(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::InvalidArgument, "ecdf needs at least one value");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  std::vector<EcdfPoint> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) {
      continue;
    }
    out.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

} // namespace ordstat
