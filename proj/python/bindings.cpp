#include "ordstat/analytic.hpp"
#include "ordstat/error.hpp"
#include "ordstat/estimators.hpp"
#include "ordstat/harness.hpp"
#include "ordstat/noise_model.hpp"
#include "ordstat/order_statistics.hpp"
#include "ordstat/rng.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace ordstat;

namespace {

std::optional<double> as_optional(const AnalyticValue &v) { return v.get(); }

std::string repr(const NoiseModel &m) {
  std::ostringstream os;
  os << "NoiseModel(" << to_string(m.family()) << ", beta=" << m.beta();
  if (m.alpha()) {
    os << ", alpha=" << *m.alpha();
  }
  if (m.sigma()) {
    os << ", sigma=" << *m.sigma();
  }
  os << ')';
  return os.str();
}

} // namespace

PYBIND11_MODULE(_ordstat, m) {
  m.doc() = "Order-statistic location estimators, closed-form MSEs and a Monte Carlo harness";

  py::register_exception<Error>(m, "OrdstatError", PyExc_ValueError);

  py::enum_<ErrorCode>(m, "ErrorCode")
      .value("Domain", ErrorCode::Domain)
      .value("InvalidArgument", ErrorCode::InvalidArgument)
      .value("InfiniteMean", ErrorCode::InfiniteMean)
      .value("InfiniteVariance", ErrorCode::InfiniteVariance)
      .value("NoClosure", ErrorCode::NoClosure)
      .value("UnsupportedFamily", ErrorCode::UnsupportedFamily)
      .value("BiasUndefined", ErrorCode::BiasUndefined)
      .value("DegenerateSample", ErrorCode::DegenerateSample);

  py::enum_<Family>(m, "Family")
      .value("Uniform", Family::Uniform)
      .value("Exponential", Family::Exponential)
      .value("Rayleigh", Family::Rayleigh)
      .value("Weibull", Family::Weibull)
      .value("Pareto", Family::Pareto)
      .value("Mixture", Family::Mixture);

  py::enum_<EstimatorId>(m, "EstimatorId")
      .value("Blue", EstimatorId::Blue)
      .value("UnbiasedKnown", EstimatorId::UnbiasedKnown)
      .value("UnbiasedUnknown", EstimatorId::UnbiasedUnknown)
      .value("MinOrder", EstimatorId::MinOrder)
      .value("MixtureRank", EstimatorId::MixtureRank);

  py::class_<NoiseModel>(m, "NoiseModel")
      .def_static("uniform", &NoiseModel::uniform, py::arg("beta"))
      .def_static("exponential", &NoiseModel::exponential, py::arg("beta"))
      .def_static("rayleigh", &NoiseModel::rayleigh, py::arg("beta"))
      .def_static("weibull", &NoiseModel::weibull, py::arg("beta"), py::arg("alpha"))
      .def_static("pareto", &NoiseModel::pareto, py::arg("beta"), py::arg("alpha"))
      .def_static("mixture", &NoiseModel::mixture, py::arg("alpha"), py::arg("sigma"),
                  py::arg("beta"))
      .def_property_readonly("family", &NoiseModel::family)
      .def_property_readonly("beta", &NoiseModel::beta)
      .def_property_readonly("alpha", &NoiseModel::alpha)
      .def_property_readonly("sigma", &NoiseModel::sigma)
      .def("__eq__", [](const NoiseModel &a, const NoiseModel &b) { return a == b; })
      .def("__repr__", &repr);

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("stream"))
      .def_property_readonly("seed", &Rng::seed)
      .def_property_readonly("stream", &Rng::stream)
      .def("uniform", py::overload_cast<>(&Rng::uniform));

  py::class_<PerfRecord>(m, "PerfRecord")
      .def_readonly("family", &PerfRecord::family)
      .def_readonly("estimator", &PerfRecord::estimator)
      .def_readonly("n", &PerfRecord::n)
      .def_readonly("mc_runs", &PerfRecord::mc_runs)
      .def_readonly("seed", &PerfRecord::seed)
      .def_readonly("beta", &PerfRecord::beta)
      .def_readonly("alpha", &PerfRecord::alpha)
      .def_readonly("sigma", &PerfRecord::sigma)
      .def_readonly("true_x", &PerfRecord::true_x)
      .def_readonly("analytic_bias", &PerfRecord::analytic_bias)
      .def_readonly("analytic_mse", &PerfRecord::analytic_mse)
      .def_readonly("emp_bias", &PerfRecord::emp_bias)
      .def_readonly("emp_var", &PerfRecord::emp_var)
      .def_readonly("emp_mse", &PerfRecord::emp_mse)
      .def("__eq__", [](const PerfRecord &a, const PerfRecord &b) { return a == b; });

  m.def("noise_pdf", &noise_pdf, py::arg("model"), py::arg("e"));
  m.def("noise_cdf", &noise_cdf, py::arg("model"), py::arg("e"));
  m.def("noise_mean", &noise_mean, py::arg("model"));
  m.def("noise_variance", &noise_variance, py::arg("model"));
  m.def(
      "sample_noise",
      [](const NoiseModel &model, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
        Rng rng(seed, stream);
        return sample_noise(model, n, rng);
      },
      py::arg("model"), py::arg("n"), py::arg("seed"), py::arg("stream") = 0);

  m.def("order_stat_pdf", &order_stat_pdf, py::arg("model"), py::arg("k"), py::arg("n"),
        py::arg("e"));
  m.def("min_order_pdf", &min_order_pdf, py::arg("model"), py::arg("n"), py::arg("e"));
  m.def("minimum_closure", &minimum_closure, py::arg("model"), py::arg("n"));
  m.def(
      "uniform_order_moments",
      [](std::size_t k, std::size_t n, double beta) {
        const Moments mo = uniform_order_moments(k, n, beta);
        return py::make_tuple(mo.mean, mo.variance);
      },
      py::arg("k"), py::arg("n"), py::arg("beta"));
  m.def("joint_extremes_pdf", &joint_extremes_pdf, py::arg("model"), py::arg("u"), py::arg("v"),
        py::arg("n"));

  m.def(
      "blue",
      [](const NoiseModel &model, std::vector<double> y) {
        return blue(model, OrderedSample(std::move(y))).value;
      },
      py::arg("model"), py::arg("y"));
  m.def(
      "min_estimator",
      [](std::vector<double> y) { return min_estimator(OrderedSample(std::move(y))).value; },
      py::arg("y"));
  m.def(
      "unbiased_known",
      [](const NoiseModel &model, std::vector<double> y) {
        return unbiased_known(model, OrderedSample(std::move(y))).value;
      },
      py::arg("model"), py::arg("y"));
  m.def(
      "unbiased_unknown",
      [](Family family, std::vector<double> y) {
        return unbiased_unknown(family, OrderedSample(std::move(y))).value;
      },
      py::arg("family"), py::arg("y"));
  m.def(
      "mixture_rank",
      [](double alpha, std::vector<double> y) {
        return mixture_rank(alpha, OrderedSample(std::move(y))).value;
      },
      py::arg("alpha"), py::arg("y"));
  m.def("mixture_rank_index", &mixture_rank_index, py::arg("alpha"), py::arg("n"));
  m.def("mixture_rank_likelihood", &mixture_rank_likelihood, py::arg("k"), py::arg("n"),
        py::arg("alpha"));
  m.def(
      "estimate",
      [](EstimatorId id, const NoiseModel &model, std::vector<double> y) {
        return estimate(id, model, OrderedSample(std::move(y))).value;
      },
      py::arg("estimator"), py::arg("model"), py::arg("y"));

  m.def(
      "analytic_bias",
      [](const NoiseModel &model, EstimatorId id, std::size_t n) {
        return as_optional(analytic_bias(model, id, n));
      },
      py::arg("model"), py::arg("estimator"), py::arg("n"));
  m.def(
      "analytic_mse",
      [](const NoiseModel &model, EstimatorId id, std::size_t n) {
        return as_optional(analytic_mse(model, id, n));
      },
      py::arg("model"), py::arg("estimator"), py::arg("n"));

  m.def(
      "empirical_moments",
      [](const std::vector<double> &estimates, double true_x) {
        const EmpiricalMoments mo = empirical_moments(estimates, true_x);
        return py::make_tuple(mo.bias, mo.variance, mo.mse);
      },
      py::arg("estimates"), py::arg("true_x"));

  m.def(
      "run_cell",
      [](const NoiseModel &model, EstimatorId id, std::size_t n, std::size_t mc_runs,
         std::uint64_t seed, double true_x) -> PerfRecord {
        const Rng rng(seed, cell_stream_id(model.family(), id, n, true));
        CellResult result;
        {
          py::gil_scoped_release release;
          result = run_cell(model, id, n, mc_runs, rng, true_x);
        }
        if (const auto *skip = std::get_if<SkippedCell>(&result)) {
          throw Error(ErrorCode::UnsupportedFamily, skip->reason);
        }
        return std::get<PerfRecord>(result);
      },
      py::arg("model"), py::arg("estimator"), py::arg("n"), py::arg("mc_runs") = 5000,
      py::arg("seed") = 0, py::arg("true_x") = 0.0);

  m.def(
      "run_sweep",
      [](const std::vector<NoiseModel> &models, std::vector<std::size_t> n_grid,
         std::vector<EstimatorId> estimators, std::size_t mc_runs, std::uint64_t seed,
         double true_x, unsigned threads) {
        ExperimentConfig cfg;
        cfg.families.assign(models.begin(), models.end());
        cfg.estimators = std::move(estimators);
        cfg.n_grid = std::move(n_grid);
        cfg.mc_runs = mc_runs;
        cfg.master_seed = seed;
        cfg.true_x = true_x;
        cfg.threads = threads;
        py::gil_scoped_release release;
        return run_sweep(cfg).records;
      },
      py::arg("models"), py::arg("n_grid"), py::arg("estimators") = std::vector<EstimatorId>{},
      py::arg("mc_runs") = 5000, py::arg("seed") = 0, py::arg("true_x") = 0.0,
      py::arg("threads") = 0);

  m.def(
      "ecdf",
      [](const std::vector<double> &values) {
        std::vector<std::pair<double, double>> out;
        for (const EcdfPoint &p : ecdf(values)) {
          out.emplace_back(p.value, p.probability);
        }
        return out;
      },
      py::arg("values"));
}
