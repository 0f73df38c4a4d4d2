#pragma once

#include "abcem/config.hpp"

#include <string>
#include <vector>

namespace abcem {

/// Names of the bundled parameter presets, in listing order.
const std::vector<std::string>& preset_names();

bool is_preset(const std::string& name);

/// Bundled configuration by name; throws ConfigMismatch for unknown names.
SimulationConfig preset(const std::string& name);

/// Canonical config text of a preset (serialize_config of the bundled
/// struct, so it round-trips through parse_config bit-exactly).
std::string preset_text(const std::string& name);

} // namespace abcem
