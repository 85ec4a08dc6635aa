#include "domecast/json_io.hpp"

#include <ostream>

#include "domecast/error.hpp"
#include "domecast/rng.hpp"
#include "domecast/text.hpp"

namespace domecast::io {

using nlohmann::json;

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const FitResult& fit) {
  json doc;
  doc["schema"] = kSchema;
  doc["kind"] = "fit";
  doc["model"] = std::string(to_string(fit.kind));
  doc["class"] = fit.composition ? json(std::string(to_string(*fit.composition))) : json(nullptr);
  for (const auto& [name, value] : fit.estimates) {
    doc["estimates"][name] = value;
    doc[name] = value;
    auto se = fit.standard_errors.find(name);
    doc["se_" + name] = se != fit.standard_errors.end() ? json(se->second) : json(nullptr);
  }
  doc["standard_errors"] = json::object();
  for (const auto& [name, value] : fit.standard_errors) doc["standard_errors"][name] = value;
  if (!fit.se_diagnostic.empty()) doc["se_diagnostic"] = fit.se_diagnostic;
  doc["nllh"] = fit.nllh_at_mle;
  doc["aic"] = fit.aic();
  doc["bic"] = fit.bic();
  doc["n"] = fit.n;
  doc["n1"] = fit.n1;
  doc["k"] = fit.k;
  doc["converged"] = fit.converged;
  doc["iterations"] = fit.iterations;
  doc["at_search_boundary"] = fit.at_search_boundary;
  if (fit.kind == ModelKind::Aggregate || fit.kind == ModelKind::GroupedClass) {
    const auto m = mean(fit.gpa());
    doc["mean_duration"] = m.infinite ? json("infinite") : json(m.years);
  } else if (fit.kind == ModelKind::Exponential) {
    doc["mean_duration"] = mean(fit.exponential()).years;
  }
  return doc;
}

FitResult fit_from_json(const json& doc) {
  try {
    if (doc.value("schema", std::string{}) != kSchema || doc.value("kind", std::string{}) != "fit") {
      throw DataError("not a domecast/v1 fit document");
    }
    FitResult fit;
    const auto kind = parse_model_kind(doc.at("model").get<std::string>());
    if (!kind) throw DataError("unknown model '" + doc.at("model").get<std::string>() + "'");
    fit.kind = *kind;
    if (doc.contains("class") && !doc["class"].is_null()) {
      fit.composition = parse_composition_class(doc["class"].get<std::string>());
      if (!fit.composition) throw DataError("unknown class in fit document");
    }
    for (const auto& [name, value] : doc.at("estimates").items()) fit.estimates[name] = value.get<double>();
    if (doc.contains("standard_errors")) {
      for (const auto& [name, value] : doc["standard_errors"].items()) fit.standard_errors[name] = value.get<double>();
    }
    fit.nllh_at_mle = doc.at("nllh").get<double>();
    fit.n = doc.at("n").get<std::size_t>();
    fit.n1 = doc.at("n1").get<std::size_t>();
    fit.k = doc.at("k").get<int>();
    fit.converged = doc.value("converged", false);
    fit.iterations = doc.value("iterations", std::size_t{0});
    fit.at_search_boundary = doc.value("at_search_boundary", false);
    return fit;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed fit document: ") + e.what());
  }
}

json to_json(const GofReport& report) {
  json doc;
  doc["schema"] = kSchema;
  doc["kind"] = "gof";
  doc["statistic"] = report.statistic;
  doc["dof"] = report.dof;
  doc["p_value"] = report.p_value;
  doc["n_bins"] = report.n_bins;
  doc["bin_edges"] = report.bin_edges;
  doc["observed"] = report.observed;
  doc["expected"] = report.expected;
  doc["warnings"] = report.warnings;
  return doc;
}

json to_json(const std::vector<ModelComparison>& rows) {
  json doc;
  doc["schema"] = kSchema;
  doc["kind"] = "comparison";
  doc["models"] = json::array();
  for (const auto& r : rows) {
    doc["models"].push_back({{"name", r.name}, {"nllh", r.nllh}, {"k", r.k}, {"n", r.n}, {"aic", r.aic}, {"bic", r.bic}});
  }
  return doc;
}

json to_json(const RecoveryStudy& study) {
  json doc;
  doc["schema"] = kSchema;
  doc["kind"] = "recovery";
  doc["n"] = study.n;
  doc["replications"] = study.replications;
  doc["succeeded"] = study.succeeded;
  doc["failed"] = study.failed;
  doc["failures"] = study.failures;
  doc["parameters"] = json::array();
  for (const auto& p : study.parameters) {
    doc["parameters"].push_back({{"name", p.name},
                                 {"truth", p.truth},
                                 {"mean_estimate", p.mean_estimate},
                                 {"bias", p.bias},
                                 {"rmse", p.rmse},
                                 {"wald95_coverage", p.wald95_coverage},
                                 {"with_se", p.with_se}});
  }
  return doc;
}

json to_json(const CatalogSummary& summary) {
  auto counts = [](const ClassCounts& c) {
    return json{{"total", c.total}, {"completed", c.completed}, {"ongoing", c.ongoing}};
  };
  json doc;
  doc["schema"] = kSchema;
  doc["kind"] = "summary";
  doc["all"] = counts(summary.all);
  for (CompositionClass c : kAllClasses) doc["classes"][std::string(to_string(c))] = counts(summary.of(c));
  return doc;
}

json provenance_json(const PosteriorChain& chain) {
  json doc;
  doc["schema"] = kSchema;
  doc["kind"] = "chain_provenance";
  doc["model"] = std::string(to_string(chain.kind));
  doc["parameters"] = chain.parameter_names;
  doc["draws"] = chain.draws.size();
  doc["seed"] = chain.config.seed;
  doc["burn_in"] = chain.config.burn_in;
  doc["iterations"] = chain.config.iterations;
  doc["thin"] = chain.config.thin;
  doc["acceptance_rate"] = chain.acceptance_rate;
  doc["burn_in_acceptance_rate"] = chain.burn_in_acceptance_rate;
  doc["proposal_scales"] = chain.final_proposal_scales;
  doc["rng"] = chain.rng_algorithm.empty() ? std::string(Rng::kAlgorithm) : chain.rng_algorithm;
  doc["prior"] = {{"a", chain.prior.a}, {"b", chain.prior.b}, {"c", chain.prior.c}, {"d", chain.prior.d}};
  return doc;
}

json forecast_header_json(const ForecastCurve& curve, const std::string& mode) {
  json doc;
  doc["schema"] = kSchema;
  doc["kind"] = "forecast";
  doc["mode"] = mode;
  doc["model"] = std::string(to_string(curve.kind));
  doc["age"] = curve.eruption_age;
  doc["band_level"] = curve.band_level;
  doc["grid_points"] = curve.t_grid.size();
  doc["draw_curves"] = curve.draw_curves.size();
  return doc;
}

json quartiles_json(const RemainingQuartiles& q, double age, const std::string& mode, const std::string& method) {
  json doc;
  doc["schema"] = kSchema;
  doc["kind"] = "quartiles";
  doc["mode"] = mode;
  doc["method"] = method;
  doc["age"] = age;
  doc["q25"] = number_or_null(q.q25);
  doc["q50"] = number_or_null(q.q50);
  doc["q75"] = number_or_null(q.q75);
  return doc;
}

void write_curve_csv(std::ostream& out, const ForecastCurve& curve) {
  out << "t,mean,low,high,plug_in\n";
  for (std::size_t i = 0; i < curve.t_grid.size(); ++i) {
    out << text::format_double(curve.t_grid[i]) << ',' << text::format_double(curve.mean_probability[i]) << ','
        << text::format_double(curve.band_low[i]) << ',' << text::format_double(curve.band_high[i]) << ','
        << text::format_double(curve.plug_in_probability[i]) << '\n';
  }
}

void write_draw_curves_csv(std::ostream& out, const ForecastCurve& curve) {
  out << "draw,t,probability\n";
  for (std::size_t j = 0; j < curve.draw_curves.size(); ++j) {
    for (std::size_t i = 0; i < curve.t_grid.size(); ++i) {
      out << j << ',' << text::format_double(curve.t_grid[i]) << ',' << text::format_double(curve.draw_curves[j][i])
          << '\n';
    }
  }
}

}  // namespace domecast::io
