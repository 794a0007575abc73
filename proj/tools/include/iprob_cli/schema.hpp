#pragma once

#include <string>

#include "json.hpp"

namespace iprob::cli {

// The configuration schema shipped with the tool.
const nlohmann::json& config_schema();

// Checks instance against the definition $defs/<def> of root.  Supports the
// keywords used by config.schema.json: $ref (local), type, enum, properties,
// required, additionalProperties, items, minItems, minimum, maximum,
// exclusiveMinimum, exclusiveMaximum and anyOf.  Throws ConfigError naming the
// offending path.
void validate(const nlohmann::json& root, const std::string& def, const nlohmann::json& instance);

}  // namespace iprob::cli
