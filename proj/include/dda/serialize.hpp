#pragma once

#include <string>

#include <json.hpp>

#include "dda/alpha.hpp"
#include "dda/ddalpha.hpp"

namespace dda {

using json = nlohmann::json;

json alpha_to_json(const AlphaModel& m);
AlphaModel alpha_from_json(const json& j);

/// Full model container: depth config, estimates, training points, direction
/// seed and count, separator weights, and treatment parameters. Sorted
/// projections are re-derived from the stored data on load.
json model_to_json(const DDAlphaModel& m);
DDAlphaModel model_from_json(const json& j);

void save_model(const DDAlphaModel& m, const std::string& path);
DDAlphaModel load_model(const std::string& path);

}  // namespace dda
