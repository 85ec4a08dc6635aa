#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "domecast/bayes.hpp"
#include "domecast/catalog.hpp"
#include "domecast/fit.hpp"
#include "domecast/forecast.hpp"
#include "domecast/gof.hpp"
#include "domecast/simulate.hpp"

namespace domecast::io {

inline constexpr const char* kSchema = "domecast/v1";

nlohmann::json to_json(const FitResult& fit);
// Throws DataError on a document that is not a domecast/v1 fit.
FitResult fit_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const GofReport& report);
nlohmann::json to_json(const std::vector<ModelComparison>& rows);
nlohmann::json to_json(const RecoveryStudy& study);
nlohmann::json to_json(const CatalogSummary& summary);
nlohmann::json provenance_json(const PosteriorChain& chain);
nlohmann::json forecast_header_json(const ForecastCurve& curve, const std::string& mode);
nlohmann::json quartiles_json(const RemainingQuartiles& q, double age, const std::string& mode,
                              const std::string& method);

// Columns t, mean, low, high, plug_in.
void write_curve_csv(std::ostream& out, const ForecastCurve& curve);
// Columns draw, t, probability for the retained per-draw curves.
void write_draw_curves_csv(std::ostream& out, const ForecastCurve& curve);

}  // namespace domecast::io
