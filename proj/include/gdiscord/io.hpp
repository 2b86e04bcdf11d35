#pragma once

// JSON and CSV plumbing shared by the CLI and tests.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "gdiscord/covariance.hpp"
#include "gdiscord/discord.hpp"
#include "gdiscord/mc_oracle.hpp"
#include "gdiscord/measurement.hpp"
#include "gdiscord/optimizer.hpp"
#include "gdiscord/separability.hpp"
#include "gdiscord/states.hpp"

namespace gdiscord {

using Json = nlohmann::ordered_json;

/// Shortest round-trip-free rendering with 12 significant digits,
/// independent of the global locale. -0 prints as 0.
std::string format_number(double value);

Json to_json(const CovarianceMatrix& V);
/// {"n": int, "matrix": [[...], ...]}; throws input_error on malformed input.
CovarianceMatrix covariance_from_json(const Json& j);
CovarianceMatrix read_covariance_file(const std::string& path);

Json to_json(const NoiseModel& noise);
NoiseModel noise_from_json(const Json& j);

Json to_json(const MeasurementPlan& plan);
MeasurementPlan plan_from_json(const Json& j);

Json to_json(const SearchOptions& options);
/// Overlays the keys present in `j` onto `base`.
SearchOptions search_options_from_json(const Json& j, SearchOptions base = {});

/// {"entangled": bool | "boundary", "method": str, "witness": real, "partition": str}
Json to_json(const SeparabilityVerdict& verdict);

/// Flat object with exactly i_q, j_g, delta_g, j_asym, delta_asym, theta,
/// t, regime, entangled. theta and t are per-mode arrays; the one-sided
/// fields are null for states with more than two modes.
Json to_json(const CorrelationReport& report);

Json to_json(const MiEstimate& estimate);

}  // namespace gdiscord
