#include "ordstat/cli.hpp"

#include "ordstat/analytic.hpp"
#include "ordstat/error.hpp"
#include "ordstat/estimators.hpp"
#include "ordstat/harness.hpp"
#include "ordstat/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ordstat::cli {
namespace {

/// Malformed flag values detected after CLI11 parsing; maps to exit 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct HyperFlags {
  double beta = 0.0;
  double alpha = 0.0;
  double sigma = 0.0;
  CLI::Option *beta_opt = nullptr;
  CLI::Option *alpha_opt = nullptr;
  CLI::Option *sigma_opt = nullptr;

  void add(CLI::App &app) {
    beta_opt = app.add_option("--beta", beta, "Scale / uniform width");
    alpha_opt = app.add_option("--alpha", alpha, "Shape (weibull, pareto) or mixing probability");
    sigma_opt = app.add_option("--sigma", sigma, "Normal std-dev of the mixture");
  }

  std::optional<double> get_beta() const {
    return beta_opt->count() ? std::optional(beta) : std::nullopt;
  }
  std::optional<double> get_alpha() const {
    return alpha_opt->count() ? std::optional(alpha) : std::nullopt;
  }
  std::optional<double> get_sigma() const {
    return sigma_opt->count() ? std::optional(sigma) : std::nullopt;
  }
};

double require_flag(const std::optional<double> &v, const char *flag, Family family) {
  if (!v) {
    throw Error(ErrorCode::InvalidArgument, std::string(to_string(family)) + " noise requires " +
                                                flag);
  }
  return *v;
}

NoiseModel fixed_model(Family family, const HyperFlags &h) {
  switch (family) {
  case Family::Uniform:
    return NoiseModel::uniform(require_flag(h.get_beta(), "--beta", family));
  case Family::Exponential:
    return NoiseModel::exponential(require_flag(h.get_beta(), "--beta", family));
  case Family::Rayleigh:
    return NoiseModel::rayleigh(require_flag(h.get_beta(), "--beta", family));
  case Family::Weibull:
    return NoiseModel::weibull(require_flag(h.get_beta(), "--beta", family),
                               require_flag(h.get_alpha(), "--alpha", family));
  case Family::Pareto:
    return NoiseModel::pareto(require_flag(h.get_beta(), "--beta", family),
                              require_flag(h.get_alpha(), "--alpha", family));
  case Family::Mixture:
    return NoiseModel::mixture(require_flag(h.get_alpha(), "--alpha", family),
                               require_flag(h.get_sigma(), "--sigma", family),
                               require_flag(h.get_beta(), "--beta", family));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

FamilySpec family_spec(Family family, const HyperFlags &h, bool draw) {
  if (draw) {
    return HyperDraw::defaults(family, h.get_alpha().value_or(0.5));
  }
  return fixed_model(family, h);
}

Family to_family(const std::string &name) {
  if (auto f = parse_family(name)) {
    return *f;
  }
  throw UsageError("unknown family '" + name + "'");
}

EstimatorId to_estimator(const std::string &name) {
  if (auto id = parse_estimator(name)) {
    return *id;
  }
  throw UsageError("unknown estimator '" + name + "'");
}

std::size_t parse_count(std::string_view token, const std::string &whole) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw UsageError("invalid --n-grid '" + whole + "'");
  }
  return value;
}

/// "paper", or a comma list whose items are counts or inclusive ranges a..b.
std::vector<std::size_t> parse_n_grid(const std::string &text) {
  if (text == "paper") {
    return default_n_grid();
  }
  std::vector<std::size_t> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      grid.push_back(parse_count(item, text));
      continue;
    }
    const std::size_t lo = parse_count(std::string_view(item).substr(0, dots), text);
    const std::size_t hi = parse_count(std::string_view(item).substr(dots + 2), text);
    if (lo > hi) {
      throw UsageError("invalid --n-grid range '" + item + "'");
    }
    for (std::size_t n = lo; n <= hi; ++n) {
      grid.push_back(n);
    }
  }
  if (grid.empty()) {
    throw UsageError("empty --n-grid");
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

unsigned threads_from_env() {
  const char *raw = std::getenv("ORDSTAT_THREADS");
  if (raw == nullptr || *raw == '\0') {
    return 0;
  }
  unsigned value = 0;
  const std::string_view text(raw);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("ORDSTAT_THREADS must be a non-negative integer");
  }
  return value;
}

/// Writes to --out when given, otherwise to `out`.
class Sink {
public:
  Sink(const std::string &path, std::ostream &fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        throw Error(ErrorCode::InvalidArgument, "cannot open output file '" + path + "'");
      }
      stream_ = &file_;
    }
  }
  std::ostream &get() { return *stream_; }

private:
  std::ofstream file_;
  std::ostream *stream_;
};

struct SweepArgs {
  std::vector<std::string> families;
  std::vector<std::string> estimators;
  std::string n_grid = "paper";
  std::size_t mc_runs = 5000;
  std::uint64_t seed = 0;
  HyperFlags hyper;
  bool draw = false;
  double true_x = 0.0;
  std::string out_path;
  std::string format = "csv";
  bool independent_noise = false;
};

int cmd_sweep(const SweepArgs &a, std::ostream &out, std::ostream &err) {
  ExperimentConfig cfg;
  for (const std::string &name : a.families) {
    cfg.families.push_back(family_spec(to_family(name), a.hyper, a.draw));
  }
  for (const std::string &name : a.estimators) {
    cfg.estimators.push_back(to_estimator(name));
  }
  cfg.n_grid = parse_n_grid(a.n_grid);
  cfg.mc_runs = a.mc_runs;
  cfg.master_seed = a.seed;
  cfg.true_x = a.true_x;
  cfg.common_noise = !a.independent_noise;
  cfg.threads = threads_from_env();

  const SweepResult result = run_sweep(cfg);
  for (const SkippedCell &s : result.skipped) {
    err << "skipped " << to_string(s.family) << '/' << to_string(s.estimator) << " n=" << s.n
        << ": " << s.reason << '\n';
  }
  Sink sink(a.out_path, out);
  if (a.format == "json") {
    io::write_records_json(sink.get(), result.records);
  } else {
    io::write_records_csv(sink.get(), result.records);
  }
  return kSuccess;
}

struct TableArgs {
  std::vector<std::string> families;
  std::vector<std::string> estimators;
  std::string n_grid;
  HyperFlags hyper;
  std::string out_path;
  std::string format = "csv";
};

int cmd_table(const TableArgs &a, std::ostream &out) {
  struct Row {
    NoiseModel model;
    EstimatorId id;
    std::size_t n;
    PerfFormula formula;
  };
  const std::vector<std::size_t> grid = parse_n_grid(a.n_grid);
  std::vector<Row> rows;
  for (const std::string &name : a.families) {
    const NoiseModel model = fixed_model(to_family(name), a.hyper);
    std::vector<EstimatorId> ids;
    if (a.estimators.empty()) {
      ids = applicable_estimators(model.family());
    } else {
      for (const std::string &e : a.estimators) {
        ids.push_back(to_estimator(e));
      }
    }
    for (EstimatorId id : ids) {
      for (std::size_t n : grid) {
        if (n == 0) {
          throw Error(ErrorCode::InvalidArgument, "sample sizes must be >= 1");
        }
        rows.push_back({model, id, n, perf_formula(model, id, n)});
      }
    }
  }

  auto reason_of = [](const PerfFormula &f) {
    return !f.mse.available() ? f.mse.reason() : f.bias.available() ? "" : f.bias.reason();
  };
  Sink sink(a.out_path, out);
  std::ostream &os = sink.get();
  if (a.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const Row &r : rows) {
      auto opt = [](const AnalyticValue &v) {
        return v.available() ? nlohmann::json(v.value()) : nlohmann::json(nullptr);
      };
      auto param = [](const std::optional<double> &v) {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
      };
      arr.push_back({{"family", std::string(to_string(r.model.family()))},
                     {"estimator", std::string(to_string(r.id))},
                     {"n", r.n},
                     {"beta", r.model.beta()},
                     {"alpha", param(r.model.alpha())},
                     {"sigma", param(r.model.sigma())},
                     {"analytic_bias", opt(r.formula.bias)},
                     {"analytic_mse", opt(r.formula.mse)},
                     {"asymptotic", r.formula.asymptotic},
                     {"reason", reason_of(r.formula)}});
    }
    os << arr.dump(2) << '\n';
    return kSuccess;
  }
  os << "family,estimator,n,beta,alpha,sigma,analytic_bias,analytic_mse,asymptotic,reason\n";
  for (const Row &r : rows) {
    os << to_string(r.model.family()) << ',' << to_string(r.id) << ',' << r.n << ','
       << io::format_double(r.model.beta()) << ',' << io::format_optional(r.model.alpha()) << ','
       << io::format_optional(r.model.sigma()) << ',' << io::format_optional(r.formula.bias.get())
       << ',' << io::format_optional(r.formula.mse.get()) << ','
       << (r.formula.asymptotic ? "true" : "false") << ',' << reason_of(r.formula) << '\n';
  }
  return kSuccess;
}

struct EstimateArgs {
  std::string family;
  std::string estimator;
  HyperFlags hyper;
  std::string in_path;
};

int cmd_estimate(const EstimateArgs &a, std::istream &in, std::ostream &out) {
  std::vector<double> samples;
  if (a.in_path.empty() || a.in_path == "-") {
    samples = io::read_samples(in);
  } else {
    std::ifstream file(a.in_path);
    if (!file) {
      throw Error(ErrorCode::InvalidArgument, "cannot open input file '" + a.in_path + "'");
    }
    samples = io::read_samples(file);
  }
  const OrderedSample s(std::move(samples));
  const EstimatorId id = to_estimator(a.estimator);
  const std::optional<Family> family =
      a.family.empty() ? std::nullopt : std::optional(to_family(a.family));

  auto need_family = [&]() {
    if (!family) {
      throw Error(ErrorCode::InvalidArgument,
                  "estimator '" + a.estimator + "' requires --family");
    }
    return *family;
  };

  Estimate result{};
  switch (id) {
  case EstimatorId::MinOrder:
    result = min_estimator(s);
    break;
  case EstimatorId::UnbiasedUnknown:
    result = unbiased_unknown(need_family(), s);
    break;
  case EstimatorId::MixtureRank: {
    if (family && *family != Family::Mixture) {
      throw Error(ErrorCode::UnsupportedFamily,
                  "estimator 'mixture-rank' is only defined for mixture noise");
    }
    result = mixture_rank(require_flag(a.hyper.get_alpha(), "--alpha", Family::Mixture), s);
    break;
  }
  case EstimatorId::Blue:
  case EstimatorId::UnbiasedKnown:
    result = estimate(id, fixed_model(need_family(), a.hyper), s);
    break;
  }
  out << io::format_double(result.value) << '\n';
  return kSuccess;
}

struct EcdfArgs {
  std::string family;
  HyperFlags hyper;
  bool draw = false;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out_path;
};

int cmd_ecdf(const EcdfArgs &a, std::ostream &out) {
  if (a.n == 0) {
    throw Error(ErrorCode::InvalidArgument, "--n must be >= 1");
  }
  const Family family = to_family(a.family);
  const FamilySpec spec = family_spec(family, a.hyper, a.draw);
  const Rng base(a.seed, static_cast<std::uint64_t>(family) + 1);
  std::vector<double> values(a.n);
  if (const auto *model = std::get_if<NoiseModel>(&spec)) {
    Rng rng = base;
    sample_noise(*model, rng, values);
  } else {
    // Hyperparameters are redrawn for every realisation.
    const auto &ranges = std::get<HyperDraw>(spec);
    for (std::size_t i = 0; i < a.n; ++i) {
      Rng rng = base.substream(i);
      values[i] = draw_noise(ranges.draw(rng), rng);
    }
  }
  Sink sink(a.out_path, out);
  std::ostream &os = sink.get();
  os << "value,cumprob\n";
  for (const EcdfPoint &p : ecdf(values)) {
    os << io::format_double(p.value) << ',' << io::format_double(p.probability) << '\n';
  }
  return kSuccess;
}

} // namespace

int run(int argc, const char *const *argv, std::istream &in, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Order-statistic location estimators: Monte Carlo sweeps and closed forms",
               "ordstat"};
  app.require_subcommand(1);

  SweepArgs sweep;
  CLI::App *sweep_cmd = app.add_subcommand("sweep", "Monte Carlo MSE study, one CSV row per cell");
  sweep_cmd->add_option("--family", sweep.families, "Noise family (repeatable)")->required();
  sweep_cmd->add_option("--estimator", sweep.estimators, "Estimator (repeatable)");
  sweep_cmd->add_option("--n-grid", sweep.n_grid, "Sample sizes: list, a..b ranges, or 'paper'")
      ->capture_default_str();
  sweep_cmd->add_option("--mc-runs", sweep.mc_runs, "Replicates per cell")->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "Master seed")->capture_default_str();
  sweep.hyper.add(*sweep_cmd);
  sweep_cmd->add_flag("--draw", sweep.draw, "Redraw hyperparameters per replicate");
  sweep_cmd->add_option("--true-x", sweep.true_x, "Location ground truth")->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out_path, "Output file (default stdout)");
  sweep_cmd->add_option("--format", sweep.format)
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sweep_cmd->add_flag("--independent-noise", sweep.independent_noise,
                      "Fresh noise per estimator instead of shared replicates");

  TableArgs table;
  CLI::App *table_cmd = app.add_subcommand("table", "Closed-form bias and MSE");
  table_cmd->add_option("--family", table.families, "Noise family (repeatable)")->required();
  table_cmd->add_option("--estimator", table.estimators, "Estimator (repeatable)");
  table_cmd->add_option("--n-grid", table.n_grid, "Sample sizes")->required();
  table.hyper.add(*table_cmd);
  table_cmd->add_option("--out", table.out_path, "Output file (default stdout)");
  table_cmd->add_option("--format", table.format)
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  EstimateArgs est;
  CLI::App *est_cmd = app.add_subcommand("estimate", "Estimate x from one sample");
  est_cmd->add_option("--family", est.family, "Noise family");
  est_cmd->add_option("--estimator", est.estimator, "Estimator")->required();
  est.hyper.add(*est_cmd);
  est_cmd->add_option("--in", est.in_path, "Sample file, one value per line (default stdin)");

  EcdfArgs ec;
  CLI::App *ecdf_cmd = app.add_subcommand("ecdf", "Empirical cdf of simulated noise");
  ecdf_cmd->add_option("--family", ec.family, "Noise family")->required();
  ec.hyper.add(*ecdf_cmd);
  ecdf_cmd->add_flag("--draw", ec.draw, "Redraw hyperparameters per realisation");
  ecdf_cmd->add_option("--n", ec.n, "Number of draws")->required();
  ecdf_cmd->add_option("--seed", ec.seed, "Seed")->capture_default_str();
  ecdf_cmd->add_option("--out", ec.out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (sweep_cmd->parsed()) {
      return cmd_sweep(sweep, out, err);
    }
    if (table_cmd->parsed()) {
      return cmd_table(table, out);
    }
    if (est_cmd->parsed()) {
      return cmd_estimate(est, in, out);
    }
    if (ecdf_cmd->parsed()) {
      return cmd_ecdf(ec, out);
    }
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error &e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

} // namespace ordstat::cli
