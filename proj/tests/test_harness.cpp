#include "ordstat/analytic.hpp"
#include "ordstat/error.hpp"
#include "ordstat/harness.hpp"

#include "support/ks.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace ordstat;
using ordstat::testing::ks_critical_value;
using ordstat::testing::ks_statistic;

namespace {

PerfRecord record_of(const CellResult &r) {
  REQUIRE(std::holds_alternative<PerfRecord>(r));
  return std::get<PerfRecord>(r);
}

PerfRecord cell(const FamilySpec &spec, EstimatorId id, std::size_t n, std::size_t m,
                std::uint64_t seed, double x = 0.0) {
  const Rng rng(seed, cell_stream_id(family_of(spec), id, n, true));
  return record_of(run_cell(spec, id, n, m, rng, x));
}

const PerfRecord &find(const std::vector<PerfRecord> &rows, EstimatorId id, std::size_t n) {
  const auto it = std::find_if(rows.begin(), rows.end(), [&](const PerfRecord &r) {
    return r.estimator == id && r.n == n;
  });
  REQUIRE(it != rows.end());
  return *it;
}

} // namespace

TEST_CASE("empirical_moments examples") {
  const std::vector<double> same{1.0, 1.0, 1.0};
  EmpiricalMoments m = empirical_moments(same, 1.0);
  CHECK(m.bias == 0.0);
  CHECK(m.variance == 0.0);
  CHECK(m.mse == 0.0);

  const std::vector<double> two{0.0, 2.0};
  m = empirical_moments(two, 0.0);
  CHECK(m.bias == 1.0);
  CHECK(m.variance == 1.0);
  CHECK(m.mse == 2.0);
  m = empirical_moments(two, 1.0);
  CHECK(m.bias == 0.0);
  CHECK(m.variance == 1.0);
  CHECK(m.mse == 1.0);
}

TEST_CASE("empirical_moments errors") {
  const std::vector<double> none;
  const std::vector<double> one{1.0};
  const std::vector<double> bad{1.0, std::nan("")};
  try {
    empirical_moments(none, 0.0);
    FAIL("expected invalid-argument");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
  CHECK_THROWS_AS(empirical_moments(one, 0.0), Error);
  try {
    empirical_moments(bad, 0.0);
    FAIL("expected domain error");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::Domain);
  }
}

TEST_CASE("run_cell examples") {
  const PerfRecord exp_uk =
      cell(NoiseModel::exponential(1.0), EstimatorId::UnbiasedKnown, 100, 5000, 42);
  CHECK(exp_uk.emp_mse == doctest::Approx(1e-4).epsilon(0.10));
  CHECK(exp_uk.analytic_mse == doctest::Approx(1e-4).epsilon(1e-14));
  CHECK(exp_uk.mc_runs == 5000);
  CHECK(exp_uk.seed == 42);

  const PerfRecord uni_min = cell(NoiseModel::uniform(1.0), EstimatorId::MinOrder, 10, 5000, 42);
  CHECK(std::abs(uni_min.emp_bias - 1.0 / 11.0) <= 4.0 * std::sqrt(uni_min.emp_var / 5000.0));
  CHECK(uni_min.analytic_bias == doctest::Approx(1.0 / 11.0).epsilon(1e-14));

  const PerfRecord again = cell(NoiseModel::uniform(1.0), EstimatorId::MinOrder, 10, 5000, 42);
  CHECK(again == uni_min);
  CHECK(again.emp_mse == uni_min.emp_mse);
  CHECK(uni_min.emp_mse == uni_min.emp_var + uni_min.emp_bias * uni_min.emp_bias);
}

TEST_CASE("run_cell reports inapplicable cells as skipped") {
  const Rng rng(1, 1);
  const CellResult pair = run_cell(NoiseModel::weibull(1.0, 5.0), EstimatorId::UnbiasedUnknown, 10,
                                   100, rng, 0.0);
  REQUIRE(std::holds_alternative<SkippedCell>(pair));
  CHECK(std::get<SkippedCell>(pair).family == Family::Weibull);
  CHECK_FALSE(std::get<SkippedCell>(pair).reason.empty());

  const CellResult region =
      run_cell(NoiseModel::pareto(6.0, 0.4), EstimatorId::UnbiasedKnown, 2, 100, rng, 0.0);
  REQUIRE(std::holds_alternative<SkippedCell>(region));
  CHECK(std::get<SkippedCell>(region).n == 2);

  const CellResult infinite_var = run_cell(NoiseModel::pareto(6.0, 1.5), EstimatorId::Blue, 10,
                                           100, rng, 0.0);
  const PerfRecord rec = record_of(infinite_var);
  CHECK_FALSE(rec.analytic_mse.has_value());
  CHECK(rec.analytic_bias == 0.0);
}

TEST_CASE("sweep produces the cartesian product in order") {
  ExperimentConfig cfg;
  cfg.families = {NoiseModel::uniform(4.0)};
  cfg.estimators = {EstimatorId::Blue, EstimatorId::MinOrder};
  cfg.n_grid = {10, 100};
  cfg.mc_runs = 200;
  const SweepResult out = run_sweep(cfg);
  REQUIRE(out.records.size() == 4);
  CHECK(out.skipped.empty());
  CHECK(out.records[0].estimator == EstimatorId::Blue);
  CHECK(out.records[0].n == 10);
  CHECK(out.records[1].n == 100);
  CHECK(out.records[2].estimator == EstimatorId::MinOrder);

  cfg.families = {NoiseModel::exponential(1.0)};
  cfg.estimators.clear();
  CHECK(run_sweep(cfg).records.size() == 8);

  cfg.families = {NoiseModel::weibull(1.0, 5.0), NoiseModel::mixture(0.5, 8.0, 60.0)};
  cfg.estimators = {EstimatorId::Blue, EstimatorId::UnbiasedUnknown, EstimatorId::MixtureRank};
  const SweepResult mixed = run_sweep(cfg);
  CHECK(mixed.records.size() == 6);
  CHECK(mixed.skipped.size() == 6);
}

TEST_CASE("uniform known-hyperparameter to BLUE MSE ratio at N = 100") {
  ExperimentConfig cfg;
  cfg.families = {NoiseModel::uniform(20.0)};
  cfg.estimators = {EstimatorId::Blue, EstimatorId::UnbiasedKnown};
  cfg.n_grid = {100};
  cfg.master_seed = 3;
  const SweepResult out = run_sweep(cfg);
  const double ratio = find(out.records, EstimatorId::UnbiasedKnown, 100).emp_mse /
                       find(out.records, EstimatorId::Blue, 100).emp_mse;
  CHECK(ratio == doctest::Approx(1200.0 / 20604.0).epsilon(0.20));
}

TEST_CASE("mixture rank MSE jumps between N = 199 and N = 200") {
  ExperimentConfig cfg;
  cfg.families = {HyperDraw::defaults(Family::Mixture, 0.01)};
  cfg.estimators = {EstimatorId::MixtureRank};
  for (std::size_t n = 190; n <= 210; ++n) {
    cfg.n_grid.push_back(n);
  }
  cfg.master_seed = 11;
  const SweepResult out = run_sweep(cfg);
  REQUIRE(out.records.size() == 21);
  double biggest = 0.0;
  std::size_t at = 0;
  for (std::size_t i = 1; i < out.records.size(); ++i) {
    const double step = std::abs(out.records[i].emp_mse - out.records[i - 1].emp_mse);
    if (step > biggest) {
      biggest = step;
      at = out.records[i].n;
    }
  }
  CHECK(at == 200);
  CHECK(find(out.records, EstimatorId::MixtureRank, 199).emp_mse >
        2.0 * find(out.records, EstimatorId::MixtureRank, 200).emp_mse);
}

TEST_CASE("sweep output does not depend on the thread count") {
  ExperimentConfig cfg;
  cfg.families = {HyperDraw::defaults(Family::Uniform), NoiseModel::rayleigh(3.0),
                  HyperDraw::defaults(Family::Pareto), HyperDraw::defaults(Family::Mixture)};
  cfg.n_grid = {2, 5, 50, 200};
  cfg.mc_runs = 300;
  cfg.master_seed = 77;
  cfg.threads = 1;
  const SweepResult serial = run_sweep(cfg);
  for (unsigned t : {2u, 3u, 8u}) {
    cfg.threads = t;
    const SweepResult parallel = run_sweep(cfg);
    CHECK(parallel.records == serial.records);
    CHECK(parallel.skipped.size() == serial.skipped.size());
  }
  cfg.master_seed = 78;
  CHECK(run_sweep(cfg).records != serial.records);
}

TEST_CASE("cells are reproducible in isolation") {
  ExperimentConfig cfg;
  cfg.families = {NoiseModel::exponential(2.0)};
  cfg.n_grid = {5, 50};
  cfg.mc_runs = 500;
  cfg.master_seed = 5;
  const SweepResult out = run_sweep(cfg);
  for (const PerfRecord &rec : out.records) {
    CHECK(cell(NoiseModel::exponential(2.0), rec.estimator, rec.n, 500, 5) == rec);
  }
}

TEST_CASE("common and independent noise") {
  const auto model = NoiseModel::exponential(2.0);
  CHECK(cell_stream_id(Family::Uniform, EstimatorId::Blue, 10, true) ==
        cell_stream_id(Family::Uniform, EstimatorId::MinOrder, 10, true));
  CHECK(cell_stream_id(Family::Uniform, EstimatorId::Blue, 10, false) !=
        cell_stream_id(Family::Uniform, EstimatorId::MinOrder, 10, false));
  CHECK(cell_stream_id(Family::Uniform, EstimatorId::Blue, 10, true) !=
        cell_stream_id(Family::Uniform, EstimatorId::Blue, 11, true));
  CHECK(cell_stream_id(Family::Uniform, EstimatorId::Blue, 10, true) !=
        cell_stream_id(Family::Exponential, EstimatorId::Blue, 10, true));

  ExperimentConfig cfg;
  cfg.families = {model};
  cfg.estimators = {EstimatorId::UnbiasedKnown, EstimatorId::MinOrder};
  cfg.n_grid = {20};
  cfg.mc_runs = 1000;
  const SweepResult shared = run_sweep(cfg);
  // Same noise: the two estimators differ by the constant beta / N.
  CHECK(shared.records[0].emp_var == doctest::Approx(shared.records[1].emp_var).epsilon(1e-9));
  cfg.common_noise = false;
  const SweepResult independent = run_sweep(cfg);
  CHECK(independent.records[0].emp_var != doctest::Approx(independent.records[1].emp_var).epsilon(1e-9));
  CHECK(run_sweep(cfg).records == independent.records);
}

TEST_CASE("results do not depend on the true location") {
  for (EstimatorId id : {EstimatorId::Blue, EstimatorId::UnbiasedKnown, EstimatorId::MinOrder}) {
    const PerfRecord a = cell(NoiseModel::rayleigh(4.0), id, 30, 2000, 9, 0.0);
    const PerfRecord b = cell(NoiseModel::rayleigh(4.0), id, 30, 2000, 9, 1000.0);
    CHECK(b.true_x == 1000.0);
    CHECK(b.emp_bias == doctest::Approx(a.emp_bias).epsilon(1e-6).scale(1e-9));
    CHECK(b.emp_var == doctest::Approx(a.emp_var).epsilon(1e-6));
    CHECK(b.emp_mse == doctest::Approx(a.emp_mse).epsilon(1e-6));
  }
}

TEST_CASE("draw mode redraws hyperparameters per replicate") {
  const HyperDraw d = HyperDraw::defaults(Family::Uniform);
  CHECK(d.beta.lo == 6.0);
  CHECK(d.beta.hi == 50.0);
  const Rng rng(21, 0);
  const CellSimulation sim = simulate_cell(d, EstimatorId::Blue, 10, 400, rng, 0.0);
  REQUIRE(sim.models.size() == 400);
  double lo = 1e9;
  double hi = -1e9;
  for (const NoiseModel &m : sim.models) {
    lo = std::min(lo, m.beta());
    hi = std::max(hi, m.beta());
  }
  CHECK(lo >= 6.0);
  CHECK(hi <= 50.0);
  CHECK(hi - lo > 30.0);

  const CellSimulation fixed = simulate_cell(FamilySpec{NoiseModel::uniform(3.0)},
                                             EstimatorId::Blue, 10, 400, rng, 0.0);
  CHECK(fixed.models.size() == 1);

  const PerfRecord rec = cell(d, EstimatorId::Blue, 10, 5000, 21);
  double mean_beta = 0.0;
  double mean_mse = 0.0;
  const Rng cell_rng(21, cell_stream_id(Family::Uniform, EstimatorId::Blue, 10, true));
  for (const NoiseModel &m : simulate_cell(d, EstimatorId::Blue, 10, 5000, cell_rng, 0.0).models) {
    mean_beta += m.beta();
    mean_mse += analytic_mse(m, EstimatorId::Blue, 10).value();
  }
  mean_beta /= 5000.0;
  mean_mse /= 5000.0;
  CHECK(rec.beta == doctest::Approx(mean_beta).epsilon(1e-12));
  CHECK(rec.analytic_mse == doctest::Approx(mean_mse).epsilon(1e-12));
  CHECK(rec.emp_mse == doctest::Approx(mean_mse).epsilon(0.10));
}

TEST_CASE("draw ranges") {
  const HyperDraw w = HyperDraw::defaults(Family::Weibull);
  CHECK(w.beta.lo == 1.0);
  CHECK(w.beta.hi == 1.0);
  CHECK(w.alpha->lo == 5.0);
  CHECK(w.alpha->hi == 10.0);
  const HyperDraw p = HyperDraw::defaults(Family::Pareto);
  CHECK(p.beta.lo == 6.0);
  CHECK(p.alpha->lo == 2.1);
  CHECK(p.alpha->hi == 2.5);
  const HyperDraw mix = HyperDraw::defaults(Family::Mixture, 0.2);
  CHECK(mix.alpha->lo == 0.2);
  CHECK(mix.alpha->hi == 0.2);
  CHECK(mix.sigma->lo == 1.0);
  CHECK(mix.sigma->hi == 9.0);
  CHECK(mix.beta.hi == 50.0);
  CHECK(HyperDraw::defaults(Family::Exponential).beta.hi == 14.0);
  CHECK(HyperDraw::defaults(Family::Rayleigh).beta.lo == 5.0);

  HyperDraw bad = HyperDraw::defaults(Family::Uniform);
  bad.beta = {10.0, 5.0};
  CHECK_THROWS_AS(bad.validate(), Error);
  HyperDraw missing = HyperDraw::defaults(Family::Weibull);
  missing.alpha.reset();
  CHECK_THROWS_AS(missing.validate(), Error);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.families = {NoiseModel::uniform(1.0)};
  cfg.n_grid = {2, 10};
  CHECK_NOTHROW(cfg.validate());
  for (std::vector<std::size_t> grid :
       {std::vector<std::size_t>{}, {1, 5}, {5, 5}, {10, 5}, {2001}}) {
    cfg.n_grid = grid;
    CHECK_THROWS_AS(cfg.validate(), Error);
    CHECK_THROWS_AS(run_sweep(cfg), Error);
  }
  cfg.n_grid = {2};
  cfg.mc_runs = 1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.mc_runs = 2;
  cfg.families.clear();
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("paper grid") {
  const std::vector<std::size_t> grid = default_n_grid();
  CHECK(grid.front() == 2);
  CHECK(grid.back() == 2000);
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(std::adjacent_find(grid.begin(), grid.end()) == grid.end());
  for (std::size_t n : {3u, 5u, 10u, 20u, 50u, 100u, 190u, 199u, 200u, 210u, 500u, 1000u}) {
    CHECK(std::find(grid.begin(), grid.end(), n) != grid.end());
  }
  CHECK(grid.size() == 11 + 21 - 1);
}

TEST_CASE("sweep record invariants") {
  ExperimentConfig cfg;
  for (Family f : kAllFamilies) {
    cfg.families.push_back(HyperDraw::defaults(f));
  }
  cfg.n_grid = {2, 10, 100};
  cfg.mc_runs = 2000;
  cfg.master_seed = 99;
  const SweepResult out = run_sweep(cfg);
  CHECK(out.records.size() == 3 * (4 + 4 + 4 + 3 + 3 + 3));
  for (const PerfRecord &r : out.records) {
    CAPTURE(to_string(r.family));
    CAPTURE(to_string(r.estimator));
    CAPTURE(r.n);
    CHECK(std::isfinite(r.emp_bias));
    CHECK(std::isfinite(r.emp_var));
    CHECK(r.emp_mse == r.emp_var + r.emp_bias * r.emp_bias);
    if (r.estimator == EstimatorId::Blue || r.estimator == EstimatorId::UnbiasedKnown ||
        r.estimator == EstimatorId::UnbiasedUnknown) {
      CHECK(std::abs(r.emp_bias) <= 4.0 * std::sqrt(r.emp_var / double(r.mc_runs)));
    }
  }
}

TEST_CASE("asymptotic formulas agree with simulation from N = 50") {
  for (const NoiseModel &model : {NoiseModel::exponential(5.0), NoiseModel::rayleigh(5.0)}) {
    for (std::size_t n : {50u, 100u, 500u}) {
      CAPTURE(to_string(model.family()));
      CAPTURE(n);
      const PerfRecord r = cell(model, EstimatorId::UnbiasedUnknown, n, 5000, 13);
      REQUIRE(r.analytic_mse.has_value());
      CHECK(std::abs(r.emp_mse - *r.analytic_mse) / *r.analytic_mse <= 0.15);
    }
  }
}

TEST_CASE("ecdf examples") {
  const std::vector<double> a{3.0, 1.0, 2.0};
  const auto pa = ecdf(a);
  REQUIRE(pa.size() == 3);
  CHECK(pa[0].value == 1.0);
  CHECK(pa[0].probability == doctest::Approx(1.0 / 3.0));
  CHECK(pa[1].probability == doctest::Approx(2.0 / 3.0));
  CHECK(pa[2].value == 3.0);
  CHECK(pa[2].probability == 1.0);

  const std::vector<double> b{1.0, 1.0, 2.0};
  const auto pb = ecdf(b);
  REQUIRE(pb.size() == 2);
  CHECK(pb[0].value == 1.0);
  CHECK(pb[0].probability == doctest::Approx(2.0 / 3.0));
  CHECK(pb[1].probability == 1.0);

  const std::vector<double> none;
  CHECK_THROWS_AS(ecdf(none), Error);
}

TEST_CASE("ecdf of uniform draws is close to the identity") {
  Rng rng(123, 0);
  const auto xs = sample_noise(NoiseModel::uniform(1.0), 100000, rng);
  const auto steps = ecdf(xs);
  double sup = 0.0;
  double previous = 0.0;
  for (const EcdfPoint &p : steps) {
    sup = std::max({sup, std::abs(p.probability - p.value), std::abs(p.value - previous)});
    previous = p.probability;
  }
  CHECK(sup < ks_critical_value(xs.size(), 0.01));
  CHECK(sup == doctest::Approx(ks_statistic(xs, [](double e) { return e; })).epsilon(1e-12));
}
