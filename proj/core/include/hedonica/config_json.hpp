#pragma once

#include <stdexcept>
#include <string_view>

#include <nlohmann/json.hpp>

#include "hedonica/config.hpp"

namespace hedonica {

/// Unknown keys, wrong value types or unparseable overrides.
class ConfigParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

nlohmann::json config_to_json(const SimConfig& config);

/// Keys are SimConfig field names; fields absent from `doc` keep their value
/// from `base`.
SimConfig config_from_json(const nlohmann::json& doc, SimConfig base = {});

/// Applies one `key=value` override. Values are read as JSON, falling back
/// to a bare string (so `risk_mix=all-seeking` works unquoted).
void apply_override(SimConfig& config, std::string_view key_value);

}  // namespace hedonica
