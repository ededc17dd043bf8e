#pragma once

#include "ordstat/estimators.hpp"
#include "ordstat/noise_model.hpp"
#include "ordstat/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ordstat {

struct DrawRange {
  double lo;
  double hi;
};

/// Hyperparameters redrawn uniformly from ranges in every replicate.
/// A range with lo == hi pins the parameter.
struct HyperDraw {
  Family family;
  DrawRange beta;
  std::optional<DrawRange> alpha; // shape, or mixing probability
  std::optional<DrawRange> sigma; // mixture only

  /// Default simulation ranges:
  ///   uniform beta in [6, 50], exponential beta in [5, 14],
  ///   rayleigh beta in [5, 12], weibull beta = 1 and alpha in [5, 10],
  ///   pareto beta = 6 and alpha in [2.1, 2.5],
  ///   mixture sigma in [1, 9] and beta in [1, 50] with a fixed alpha.
  static HyperDraw defaults(Family family, double mixture_alpha = 0.5);

  /// Throws Error{InvalidArgument} for inverted or missing ranges.
  void validate() const;
  NoiseModel draw(Rng &rng) const;
};

/// Either fixed hyperparameters or per-replicate draw ranges.
using FamilySpec = std::variant<NoiseModel, HyperDraw>;

Family family_of(const FamilySpec &spec);

struct ExperimentConfig {
  std::vector<FamilySpec> families;
  /// Empty means every estimator applicable to each family.
  std::vector<EstimatorId> estimators;
  std::vector<std::size_t> n_grid;
  std::size_t mc_runs = 5000;
  std::uint64_t master_seed = 0;
  double true_x = 0.0;
  /// Share the noise realisations of a replicate across estimators.
  bool common_noise = true;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;

  /// Throws Error{InvalidArgument}: families nonempty, n_grid nonempty,
  /// strictly ascending and within [2, 2000], mc_runs >= 2.
  void validate() const;
};

/// {2, 3, 5, 10, 20, 50, 100, 200, 500, 1000, 2000} merged with 190..210.
std::vector<std::size_t> default_n_grid();

struct PerfRecord {
  Family family;
  EstimatorId estimator;
  std::size_t n;
  std::size_t mc_runs;
  std::uint64_t seed;
  // Hyperparameters; replicate averages when they are redrawn.
  double beta;
  std::optional<double> alpha;
  std::optional<double> sigma;
  double true_x;
  std::optional<double> analytic_bias;
  std::optional<double> analytic_mse;
  double emp_bias;
  double emp_var;
  double emp_mse;

  friend bool operator==(const PerfRecord &, const PerfRecord &) = default;
};

struct SkippedCell {
  Family family;
  EstimatorId estimator;
  std::size_t n;
  std::string reason;
};

using CellResult = std::variant<PerfRecord, SkippedCell>;

struct SweepResult {
  std::vector<PerfRecord> records;
  std::vector<SkippedCell> skipped;
};

struct EmpiricalMoments {
  double bias;
  double variance; // divided by M
  double mse;      // variance + bias^2
};

/// Throws Error{InvalidArgument} for fewer than two estimates and
/// Error{Domain} for non-finite ones.
EmpiricalMoments empirical_moments(std::span<const double> estimates, double true_x);

/// Stream id of a sweep cell. The estimator only enters the key when
/// noise is not shared across estimators.
std::uint64_t cell_stream_id(Family family, EstimatorId id, std::size_t n, bool common_noise);

/// The M estimates of one cell. Replicate r draws from cell_rng.substream(r):
/// hyperparameters first (draw mode), then n noise values shifted by true_x.
struct CellSimulation {
  std::vector<double> estimates;
  std::vector<NoiseModel> models; // one per replicate in draw mode, else one
};

CellSimulation simulate_cell(const FamilySpec &spec, EstimatorId id, std::size_t n,
                             std::size_t mc_runs, const Rng &cell_rng, double true_x);

/// Runs one cell; estimator applicability problems come back as SkippedCell.
CellResult run_cell(const FamilySpec &spec, EstimatorId id, std::size_t n, std::size_t mc_runs,
                    const Rng &cell_rng, double true_x);

/// Every (family, estimator, n) cell in config order; identical output for
/// any thread count.
SweepResult run_sweep(const ExperimentConfig &cfg);

struct EcdfPoint {
  double value;
  double probability; // fraction of values <= value
};

/// Right-continuous empirical cdf, one point per distinct value.
/// Throws Error{InvalidArgument} when empty.
std::vector<EcdfPoint> ecdf(std::span<const double> values);

} // namespace ordstat
