#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "osim/sim.hpp"

namespace osim {

// Parse sectioned key = value text ([tractor], [tires], [terrain], [driver],
// [sim]; angle keys carry a _deg suffix) on top of the built-in defaults.
// Unknown sections and keys are rejected by name.
SimConfig parse_config_text(const std::string& text);

// parse_config_text over the contents of `path`.
SimConfig load_config(const std::string& path);

// Full resolved configuration as JSON, SI units (angles in radians). Feeding
// it back through config_from_json reproduces the configuration bit-exactly.
nlohmann::json config_echo(const SimConfig& config);

SimConfig config_from_json(const nlohmann::json& j);

}  // namespace osim
