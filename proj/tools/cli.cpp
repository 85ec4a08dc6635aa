#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "domecast/bayes.hpp"
#include "domecast/catalog.hpp"
#include "domecast/error.hpp"
#include "domecast/fit.hpp"
#include "domecast/forecast.hpp"
#include "domecast/gof.hpp"
#include "domecast/json_io.hpp"
#include "domecast/simulate.hpp"
#include "domecast/text.hpp"

namespace domecast::cli {

namespace {

using nlohmann::json;

constexpr double kDaysPerYear = 365.25;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Collects the documents a command produces; written to --out DIR or, when
// no directory is given, the primary document goes to stdout.
class Sink {
 public:
  Sink(std::string dir, std::ostream& out) : dir_(std::move(dir)), out_(out) {}

  void emit(const std::string& file, const std::string& contents, bool primary) {
    if (dir_.empty()) {
      if (primary) out_ << contents;
      return;
    }
    std::filesystem::create_directories(dir_);
    text::write_file_atomic((std::filesystem::path(dir_) / file).string(), contents);
  }
  void emit_json(const std::string& file, const json& doc, bool primary) { emit(file, doc.dump(2) + "\n", primary); }

 private:
  std::string dir_;
  std::ostream& out_;
};

struct CommonFlags {
  std::string out_dir;
  bool days = false;
};

Catalog load_catalog(const std::string& path, bool days) {
  Catalog c = read_catalog_file(path);
  return days ? c.scaled(1.0 / kDaysPerYear) : c;
}

CompositionClass class_option(const std::string& s) {
  auto c = parse_composition_class(s);
  if (!c) throw UsageError("unknown class '" + s + "' (mafic, intermediate, evolved)");
  return *c;
}

Family family_option(const std::string& s) {
  if (s == "gpa") return Family::GPa;
  if (s == "exponential") return Family::Exponential;
  throw UsageError("unknown family '" + s + "' (gpa, exponential)");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void require_converged(const FitResult& fit) {
  if (!fit.converged) {
    throw NumericalError("optimizer did not meet its convergence criterion for the " +
                         std::string(to_string(fit.kind)) + " model");
  }
}

std::vector<double> parse_grid(const std::string& spec) {
  // start:stop:count
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw UsageError("grid must be start:stop:count");
  const auto start = text::parse_double(parts[0]);
  const auto stop = text::parse_double(parts[1]);
  const auto count = text::parse_integer(parts[2]);
  if (!start || !stop || !count || *count < 2 || !(*stop > *start) || *start < 0) {
    throw UsageError("grid must be start:stop:count with 0 <= start < stop and count >= 2");
  }
  std::vector<double> grid(static_cast<std::size_t>(*count));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = *start + (*stop - *start) * static_cast<double>(i) / static_cast<double>(grid.size() - 1);
  }
  return grid;
}

PriorSpec parse_prior(const std::vector<double>& v) {
  if (v.empty()) return {};
  if (v.size() != 4) throw UsageError("--prior takes four values a b c d");
  PriorSpec p{v[0], v[1], v[2], v[3]};
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return p;
}

// ---- fit -------------------------------------------------------------------

struct FitFlags : CommonFlags {
  std::string catalog;
  std::string model = "aggregate";
  std::string composition;
  std::string family = "gpa";
  bool completed_only = false;
  std::uint64_t seed = FitOptions{}.seed;
};

int cmd_fit(const FitFlags& f, std::ostream& out) {
  Catalog catalog = load_catalog(f.catalog, f.days);
  if (f.completed_only) catalog = catalog.completed_only();
  FitOptions options;
  options.seed = f.seed;
  Sink sink(f.out_dir, out);

  if (f.model == "aggregate") {
    const auto fit = fit_aggregate(catalog, options);
    require_converged(fit);
    sink.emit_json("fit.json", io::to_json(fit), true);
  } else if (f.model == "regression") {
    const auto fit = fit_regression(catalog, options);
    require_converged(fit);
    sink.emit_json("fit.json", io::to_json(fit), true);
  } else if (f.model == "grouped") {
    const Family family = family_option(f.family);
    if (!f.composition.empty()) {
      const auto fit = fit_grouped(catalog, class_option(f.composition), family, options);
      require_converged(fit);
      sink.emit_json("fit.json", io::to_json(fit), true);
    } else {
      std::vector<FitResult> parts;
      for (CompositionClass c : kAllClasses) {
        parts.push_back(fit_grouped(catalog, c, family, options));
        require_converged(parts.back());
      }
      const auto combined = combine("grouped", parts);
      json doc;
      doc["schema"] = io::kSchema;
      doc["kind"] = "grouped_fit";
      doc["fits"] = json::array();
      for (const auto& p : parts) doc["fits"].push_back(io::to_json(p));
      doc["nllh"] = combined.nllh;
      doc["k"] = combined.k;
      doc["n"] = combined.n;
      doc["aic"] = combined.aic;
      doc["bic"] = combined.bic;
      sink.emit_json("fit.json", doc, true);
    }
  } else {
    throw UsageError("unknown model '" + f.model + "' (aggregate, grouped, regression)");
  }
  return kOk;
}

// ---- gof -------------------------------------------------------------------

struct GofFlags : CommonFlags {
  std::string catalog;
  std::string fit_path;
  std::size_t bins = kDefaultGofBins;
};

int cmd_gof(const GofFlags& f, std::ostream& out) {
  const FitResult fit = io::fit_from_json(read_json_file(f.fit_path));
  if (fit.kind == ModelKind::Regression) {
    throw UsageError("gof needs a single duration law: use an aggregate or single-class grouped fit");
  }
  Catalog catalog = load_catalog(f.catalog, f.days);
  if (fit.composition) catalog = catalog.of_class(*fit.composition);
  const Catalog completed = catalog.completed_only();
  const DurationModel model = fit.duration_model();
  GofReport report;
  try {
    report = gof_test(completed, model, parameter_count(model), f.bins);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Sink(f.out_dir, out).emit_json("gof.json", io::to_json(report), true);
  return kOk;
}

// ---- compare ---------------------------------------------------------------

struct CompareFlags : CommonFlags {
  std::string catalog;
};

int cmd_compare(const CompareFlags& f, std::ostream& out) {
  const Catalog catalog = load_catalog(f.catalog, f.days);
  std::vector<NamedModel> models;
  models.push_back({"aggregate", {fit_aggregate(catalog)}});
  NamedModel grouped{"grouped", {}};
  for (CompositionClass c : kAllClasses) grouped.parts.push_back(fit_grouped(catalog, c, Family::GPa));
  models.push_back(std::move(grouped));
  const bool all_silica = std::all_of(catalog.records().begin(), catalog.records().end(),
                                      [](const EruptionRecord& r) { return r.silica_pct.has_value(); });
  if (all_silica) models.push_back({"regression", {fit_regression(catalog)}});
  for (const auto& m : models) {
    for (const auto& p : m.parts) require_converged(p);
  }
  Sink(f.out_dir, out).emit_json("compare.json", io::to_json(compare_models(models)), true);
  return kOk;
}

// ---- posterior -------------------------------------------------------------

struct PosteriorFlags : CommonFlags {
  std::string catalog;
  std::string model = "aggregate";
  std::string composition;
  std::size_t burn_in = McmcConfig{}.burn_in;
  std::size_t iterations = McmcConfig{}.iterations;
  std::size_t thin = McmcConfig{}.thin;
  std::uint64_t seed = McmcConfig{}.seed;
  std::vector<double> prior;
};

int cmd_posterior(const PosteriorFlags& f, std::ostream& out) {
  Catalog catalog = load_catalog(f.catalog, f.days);
  ModelKind kind = ModelKind::Aggregate;
  if (f.model == "regression") {
    kind = ModelKind::Regression;
  } else if (f.model == "grouped") {
    if (f.composition.empty()) throw UsageError("--model grouped needs --class");
    kind = ModelKind::GroupedClass;
    catalog = catalog.of_class(class_option(f.composition));
  } else if (f.model != "aggregate") {
    throw UsageError("unknown model '" + f.model + "' (aggregate, grouped, regression)");
  }
  McmcConfig config;
  config.burn_in = f.burn_in;
  config.iterations = f.iterations;
  config.thin = f.thin;
  config.seed = f.seed;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const PriorSpec prior = parse_prior(f.prior);
  const PosteriorChain chain = run_mh(kind, catalog, prior, config);

  std::ostringstream csv;
  write_chain_csv(csv, chain);
  Sink sink(f.out_dir, out);
  sink.emit("chain.csv", csv.str(), true);
  sink.emit_json("chain.json", io::provenance_json(chain), false);
  return kOk;
}

// ---- forecast --------------------------------------------------------------

struct ForecastFlags : CommonFlags {
  std::string chain_path;
  std::string fit_path;
  std::string ongoing_catalog;
  std::optional<double> age;
  std::optional<double> silica;
  std::string grid = "0:50:101";
  bool quartiles = false;
  std::string method = "predictive-mean";
};

// Chain from a CSV, or a point-mass chain at a fit's estimates.
PosteriorChain forecast_source(const ForecastFlags& f, std::string& mode) {
  if (!f.chain_path.empty()) {
    std::ifstream in(f.chain_path);
    if (!in) throw DataError("cannot open chain '" + f.chain_path + "'");
    mode = "bayes";
    return read_chain_csv(in);
  }
  const FitResult fit = io::fit_from_json(read_json_file(f.fit_path));
  mode = "plug-in";
  switch (fit.kind) {
    case ModelKind::Aggregate:
    case ModelKind::GroupedClass:
      return PosteriorChain::point_mass(fit.kind, {fit.estimates.at("alpha"), fit.estimates.at("beta")});
    case ModelKind::Regression: {
      const auto p = fit.regression();
      return PosteriorChain::point_mass(fit.kind, {p.alpha, p.beta, p.gamma_alpha, p.gamma_beta});
    }
    case ModelKind::Exponential:
      break;
  }
  throw UsageError("forecasting needs a generalized Pareto fit (aggregate, grouped or regression)");
}

int cmd_forecast(const ForecastFlags& f, std::ostream& out) {
  if (f.chain_path.empty() == f.fit_path.empty()) throw UsageError("give exactly one of --chain or --fit");
  std::string mode;
  const PosteriorChain chain = forecast_source(f, mode);
  const bool regression = chain.kind == ModelKind::Regression;
  const std::vector<double> grid = parse_grid(f.grid);
  Sink sink(f.out_dir, out);

  if (!f.ongoing_catalog.empty()) {
    const Catalog catalog = load_catalog(f.ongoing_catalog, f.days);
    std::vector<ForecastTarget> targets;
    for (const auto& r : catalog.records()) {
      if (!r.censored) continue;
      if (regression && !r.silica_pct) throw DataError("ongoing eruption '" + r.volcano_name + "' has no silica_pct");
      targets.push_back({r.volcano_name, r.duration, r.silica_pct, r.composition});
    }
    std::ostringstream csv;
    csv << "name,class,age,t,mean,low,high,plug_in\n";
    for (const auto& fc : forecast_batch(chain, targets, grid)) {
      for (std::size_t i = 0; i < grid.size(); ++i) {
        csv << text::csv_field(fc.target.name) << ',' << to_string(*fc.target.composition) << ','
            << text::format_double(fc.target.age) << ',' << text::format_double(grid[i]) << ','
            << text::format_double(fc.curve.mean_probability[i]) << ',' << text::format_double(fc.curve.band_low[i])
            << ',' << text::format_double(fc.curve.band_high[i]) << ','
            << text::format_double(fc.curve.plug_in_probability[i]) << '\n';
      }
    }
    sink.emit("forecast_batch.csv", csv.str(), true);
    return kOk;
  }

  if (!f.age) throw UsageError("--age is required (or use --ongoing)");
  const double age = f.days ? *f.age / kDaysPerYear : *f.age;
  if (regression && !f.silica) throw UsageError("a regression model needs --silica");
  if (!regression && f.silica) throw UsageError("--silica applies only to regression models");
  const std::optional<double> silica = regression ? f.silica : std::nullopt;

  if (f.quartiles) {
    QuartileMethod method = QuartileMethod::PredictiveMean;
    if (f.method == "draw-average") {
      method = QuartileMethod::DrawAverage;
    } else if (f.method != "predictive-mean") {
      throw UsageError("unknown quartile method '" + f.method + "'");
    }
    const auto q = predictive_quartiles(chain, age, silica, method);
    sink.emit_json("quartiles.json", io::quartiles_json(q, age, mode, f.method), true);
    return kOk;
  }

  const ForecastCurve curve = predictive_curve(chain, age, silica, grid);
  std::ostringstream csv;
  io::write_curve_csv(csv, curve);
  std::ostringstream draws;
  io::write_draw_curves_csv(draws, curve);
  sink.emit("forecast.csv", csv.str(), true);
  sink.emit_json("forecast.json", io::forecast_header_json(curve, mode), false);
  sink.emit("draws.csv", draws.str(), false);
  return kOk;
}

// ---- simulate / recovery ---------------------------------------------------

struct SimFlags : CommonFlags {
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma_alpha;
  std::optional<double> gamma_beta;
  std::optional<double> lambda;
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  std::optional<double> horizon;
  std::optional<double> censor_fraction;
  std::size_t reps = 50;
};

SimSpec sim_spec(const SimFlags& f) {
  SimSpec spec;
  spec.n = f.n;
  spec.seed = f.seed;
  try {
    if (f.lambda) {
      if (f.alpha || f.beta) throw UsageError("give either --lambda or --alpha/--beta");
      spec.model = ExpParams(*f.lambda);
    } else {
      const double alpha = f.alpha.value_or(0.65);
      const double beta = f.beta.value_or(0.70);
      if (f.gamma_alpha || f.gamma_beta) {
        spec.model = RegressionModel{{alpha, beta, f.gamma_alpha.value_or(0.0), f.gamma_beta.value_or(0.0)}, {}};
      } else {
        spec.model = GPaParams(alpha, beta);
      }
    }
    if (f.horizon && f.censor_fraction) throw UsageError("give at most one of --horizon and --censor-fraction");
    if (f.horizon) spec.censoring = FixedHorizon{*f.horizon};
    if (f.censor_fraction) spec.censoring = RandomFraction{*f.censor_fraction};
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return spec;
}

int cmd_simulate(const SimFlags& f, std::ostream& out) {
  const Catalog catalog = generate(sim_spec(f));
  Sink(f.out_dir, out).emit("catalog.csv", serialize_catalog(catalog), true);
  return kOk;
}

int cmd_recovery(const SimFlags& f, std::ostream& out) {
  if (f.reps < 10) throw UsageError("--reps must be at least 10");
  const RecoveryStudy study = recovery_study(sim_spec(f), f.reps);
  Sink(f.out_dir, out).emit_json("recovery.json", io::to_json(study), true);
  return kOk;
}

// ---- empirical -------------------------------------------------------------

struct EmpiricalFlags : CommonFlags {
  std::string catalog;
  std::size_t model_points = 60;
};

int cmd_empirical(const EmpiricalFlags& f, std::ostream& out) {
  const Catalog catalog = load_catalog(f.catalog, f.days);
  std::ostringstream csv;
  csv << "series,scope,name,censored,t,t_end,fraction\n";

  auto emit_scope = [&](const std::string& scope, const Catalog& sub) {
    if (sub.empty()) return;
    // Exceedance fractions: the i-th longest eruption sits at i / n.
    auto empirical = [&](const std::string& series, const Catalog& c) {
      std::vector<EruptionRecord> sorted = c.records();
      std::stable_sort(sorted.begin(), sorted.end(),
                       [](const auto& a, const auto& b) { return a.duration > b.duration; });
      const auto n = static_cast<double>(sorted.size());
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        csv << series << ',' << scope << ',' << text::csv_field(sorted[i].volcano_name) << ','
            << (sorted[i].censored ? 1 : 0) << ',' << text::format_double(sorted[i].duration) << ",,"
            << text::format_double(static_cast<double>(i + 1) / n) << '\n';
      }
      return sorted;
    };
    const auto all_sorted = empirical("empirical_all", sub);
    if (sub.n_completed() > 0) empirical("empirical_completed", sub.completed_only());

    if (sub.n_completed() < 2) return;
    const FitResult fit = fit_aggregate(sub);
    const GPaParams p = fit.gpa();
    double lo = all_sorted.back().duration;
    double hi = all_sorted.front().duration * 10.0;
    for (std::size_t i = 0; i < f.model_points; ++i) {
      const double t = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(f.model_points - 1));
      csv << "model," << scope << ",,," << text::format_double(t) << ",," << text::format_double(survival(p, t))
          << '\n';
    }
    const auto n = static_cast<double>(all_sorted.size());
    for (std::size_t i = 0; i < all_sorted.size(); ++i) {
      const auto& r = all_sorted[i];
      if (!r.censored) continue;
      csv << "median_shift," << scope << ',' << text::csv_field(r.volcano_name) << ",1,"
          << text::format_double(r.duration) << ',' << text::format_double(r.duration + plugin_median_shift(p, r.duration))
          << ',' << text::format_double(static_cast<double>(i + 1) / n) << '\n';
    }
  };

  emit_scope("all", catalog);
  for (CompositionClass c : kAllClasses) emit_scope(std::string(to_string(c)), catalog.of_class(c));
  Sink(f.out_dir, out).emit("empirical.csv", csv.str(), true);
  return kOk;
}

// ---- summary ---------------------------------------------------------------

struct SummaryFlags : CommonFlags {
  std::string catalog;
};

int cmd_summary(const SummaryFlags& f, std::ostream& out) {
  Sink(f.out_dir, out).emit_json("summary.json", io::to_json(summarize(load_catalog(f.catalog, f.days))), true);
  return kOk;
}

void add_common(CLI::App* sub, CommonFlags& flags, bool days) {
  sub->add_option("--out", flags.out_dir, "Directory for output files (default: primary document to stdout)");
  if (days) sub->add_flag("--days", flags.days, "Durations/ages are in days (divided by 365.25)");
}

void report(std::ostream& err, int code, std::string_view kind, const std::string& message) {
  err << json{{"error", {{"code", code}, {"kind", kind}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Pareto survival models for lava dome eruption durations", "domecast"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  SummaryFlags summary;
  auto* summary_cmd = app.add_subcommand("summary", "Count eruptions by status and composition class");
  summary_cmd->add_option("catalog", summary.catalog, "Catalog CSV")->required();
  add_common(summary_cmd, summary, true);

  FitFlags fit;
  auto* fit_cmd = app.add_subcommand("fit", "Maximum-likelihood fit with standard errors, AIC and BIC");
  fit_cmd->add_option("catalog", fit.catalog, "Catalog CSV")->required();
  fit_cmd->add_option("--model", fit.model, "aggregate | grouped | regression")->capture_default_str();
  fit_cmd->add_option("--class", fit.composition, "Composition class for --model grouped (default: all three)");
  fit_cmd->add_option("--family", fit.family, "gpa | exponential (grouped model)")->capture_default_str();
  fit_cmd->add_flag("--completed-only", fit.completed_only, "Drop ongoing eruptions before fitting");
  fit_cmd->add_option("--seed", fit.seed, "Seed for the regression multistart jitter")->capture_default_str();
  add_common(fit_cmd, fit, true);

  GofFlags gof;
  auto* gof_cmd = app.add_subcommand("gof", "Chi-square goodness-of-fit test of a fitted model");
  gof_cmd->add_option("catalog", gof.catalog, "Catalog CSV")->required();
  gof_cmd->add_option("--fit", gof.fit_path, "fit.json from the fit command")->required();
  gof_cmd->add_option("--bins", gof.bins, "Number of equiprobable bins")->capture_default_str();
  add_common(gof_cmd, gof, true);

  CompareFlags compare;
  auto* compare_cmd = app.add_subcommand("compare", "AIC/BIC for the aggregate, grouped and regression models");
  compare_cmd->add_option("catalog", compare.catalog, "Catalog CSV")->required();
  add_common(compare_cmd, compare, true);

  PosteriorFlags posterior;
  auto* posterior_cmd = app.add_subcommand("posterior", "Metropolis-Hastings posterior sample");
  posterior_cmd->add_option("catalog", posterior.catalog, "Catalog CSV")->required();
  posterior_cmd->add_option("--model", posterior.model, "aggregate | grouped | regression")->capture_default_str();
  posterior_cmd->add_option("--class", posterior.composition, "Composition class for --model grouped");
  posterior_cmd->add_option("--burn-in", posterior.burn_in, "Burn-in steps")->capture_default_str();
  posterior_cmd->add_option("--iters", posterior.iterations, "Iterations after burn-in")->capture_default_str();
  posterior_cmd->add_option("--thin", posterior.thin, "Keep every thin-th state")->capture_default_str();
  posterior_cmd->add_option("--seed", posterior.seed, "Random seed")->capture_default_str();
  posterior_cmd->add_option("--prior", posterior.prior, "Gamma prior a b c d (default: reference prior 0 0 0 0)")
      ->expected(4);
  add_common(posterior_cmd, posterior, true);

  ForecastFlags forecast;
  auto* forecast_cmd = app.add_subcommand("forecast", "Remaining-duration forecast from a chain or a fit");
  forecast_cmd->add_option("--chain", forecast.chain_path, "chain.csv (Bayesian mode)");
  forecast_cmd->add_option("--fit", forecast.fit_path, "fit.json (plug-in mode)");
  forecast_cmd->add_option("--age", forecast.age, "Years the eruption has lasted so far");
  forecast_cmd->add_option("--silica", forecast.silica, "Silica percent (regression models)");
  forecast_cmd->add_option("--grid", forecast.grid, "Horizon grid start:stop:count in years")->capture_default_str();
  forecast_cmd->add_flag("--quartiles", forecast.quartiles, "Emit remaining-duration quartiles instead of a curve");
  forecast_cmd->add_option("--method", forecast.method, "Quartiles: predictive-mean | draw-average")
      ->capture_default_str();
  forecast_cmd->add_option("--ongoing", forecast.ongoing_catalog, "Forecast every ongoing eruption in this catalog");
  add_common(forecast_cmd, forecast, true);

  SimFlags simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Generate a synthetic catalog");
  SimFlags recovery;
  auto* recovery_cmd = app.add_subcommand("recovery", "Estimator recovery study on synthetic catalogs");
  for (auto [cmd, flags] : {std::pair{simulate_cmd, &simulate}, std::pair{recovery_cmd, &recovery}}) {
    cmd->add_option("--alpha", flags->alpha, "GPa shape (default 0.65)");
    cmd->add_option("--beta", flags->beta, "GPa scale in years (default 0.70)");
    cmd->add_option("--gamma-alpha", flags->gamma_alpha, "Silica slope of log alpha (regression model)");
    cmd->add_option("--gamma-beta", flags->gamma_beta, "Silica slope of log beta (regression model)");
    cmd->add_option("--lambda", flags->lambda, "Exponential rate instead of GPa");
    cmd->add_option("--n", flags->n, "Eruptions per catalog")->capture_default_str();
    cmd->add_option("--seed", flags->seed, "Random seed")->capture_default_str();
    cmd->add_option("--horizon", flags->horizon, "Fixed-horizon censoring window in years");
    cmd->add_option("--censor-fraction", flags->censor_fraction, "Random-fraction censoring");
    add_common(cmd, *flags, false);
  }
  recovery_cmd->add_option("--reps", recovery.reps, "Replications")->capture_default_str();

  EmpiricalFlags empirical;
  auto* empirical_cmd = app.add_subcommand("empirical", "Exceedance fractions, model curves and median shifts");
  empirical_cmd->add_option("catalog", empirical.catalog, "Catalog CSV")->required();
  empirical_cmd->add_option("--points", empirical.model_points, "Model curve points")->capture_default_str();
  add_common(empirical_cmd, empirical, true);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report(err, kUsage, "usage", e.what());
    return kUsage;
  }

  try {
    if (*summary_cmd) return cmd_summary(summary, out);
    if (*fit_cmd) return cmd_fit(fit, out);
    if (*gof_cmd) return cmd_gof(gof, out);
    if (*compare_cmd) return cmd_compare(compare, out);
    if (*posterior_cmd) return cmd_posterior(posterior, out);
    if (*forecast_cmd) return cmd_forecast(forecast, out);
    if (*simulate_cmd) return cmd_simulate(simulate, out);
    if (*recovery_cmd) return cmd_recovery(recovery, out);
    if (*empirical_cmd) return cmd_empirical(empirical, out);
  } catch (const UsageError& e) {
    report(err, kUsage, "usage", e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    report(err, kUsage, "usage", e.what());
    return kUsage;
  } catch (const DataError& e) {
    report(err, kData, "data", e.what());
    return kData;
  } catch (const NumericalError& e) {
    report(err, kNumerical, "numerical", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    report(err, kData, "data", e.what());
    return kData;
  }
  return kUsage;
}

}  // namespace domecast::cli
