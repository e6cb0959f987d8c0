#pragma once

#include <string>

#include "json.hpp"
#include "vs/grid.hpp"
#include "vs/network.hpp"
#include "vs/solver.hpp"

namespace vs {

nlohmann::json to_json(const SineFunction& f);
SineFunction sine_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GridFunction& g);
GridFunction grid_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BarronCertificate& c);
nlohmann::json to_json(const TwoLayerNetwork& net);

// One CSV line per recorded iterate, fixed column order:
// t,energy,gap,h1_error,contraction,barron_computed,barron_bound,W,
// truncation_residual,drift,drift_bound
std::string report_csv(const ConvergenceReport& rep);
nlohmann::json report_summary(const ConvergenceReport& rep);

// Shortest round-trippable decimal form, deterministic across runs.
std::string format_double(double v);

void write_file(const std::string& path, const std::string& contents);

}  // namespace vs
