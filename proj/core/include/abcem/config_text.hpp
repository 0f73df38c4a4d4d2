#pragma once

#include "abcem/config.hpp"

#include <string>
#include <string_view>

namespace abcem {

/// Parses the nested key/value configuration format. Unknown keys, missing
/// required keys, duplicate keys, and model/block mismatches are hard errors
/// (ParseError / ConfigMismatch) with line diagnostics.
SimulationConfig parse_config(std::string_view text, std::string_view name = "");

/// Canonical text form; parse(serialize(c)) reproduces c and
/// serialize(parse(t)) is idempotent.
std::string serialize_config(const SimulationConfig& config);

/// Shortest decimal representation that parses back to exactly `value`
/// (at most 17 significant digits).
std::string format_double(double value);

} // namespace abcem
