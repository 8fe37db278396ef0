#pragma once

// Validation against the subset of JSON Schema used by the scenario schema:
// type, enum, properties, required, additionalProperties (false only),
// items, minItems, maxItems, minimum, maximum, exclusiveMinimum, oneOf,
// anyOf and local "#/$defs/..." references.

#include <optional>
#include <string>

#include <json.hpp>

namespace crossmetric::runner {

struct SchemaViolation {
  /// Dotted key path of the offending value, e.g. "base.kind" or "parities[1]".
  std::string path;
  std::string message;

  std::string describe() const { return (path.empty() ? "<root>" : path) + ": " + message; }
};

/// First violation in document order, or nullopt if `instance` conforms.
std::optional<SchemaViolation> validate(const nlohmann::json& schema,
                                        const nlohmann::json& instance);

/// The scenario schema compiled into the binary.
const nlohmann::json& scenario_schema();

}  // namespace crossmetric::runner
