#include "schema.hpp"

#include <stdexcept>

#include "scenario_schema.inc"

namespace crossmetric::runner {

namespace {

using nlohmann::json;

class Validator {
 public:
  explicit Validator(const json& root) : root_(root) {}

  std::optional<SchemaViolation> check(const json& schema, const json& value,
                                       const std::string& path) const {
    if (schema.contains("$ref")) return check(resolve(schema["$ref"]), value, path);

    if (schema.contains("type") && !type_matches(schema["type"], value)) {
      return SchemaViolation{path, "expected " + type_name(schema["type"]) + ", got " +
                                       value.type_name()};
    }
    if (schema.contains("enum")) {
      bool found = false;
      for (const auto& option : schema["enum"]) found = found || option == value;
      if (!found) {
        return SchemaViolation{path, "value " + value.dump() + " is not one of " +
                                         schema["enum"].dump()};
      }
    }
    if (value.is_number()) {
      const double v = value.get<double>();
      if (schema.contains("minimum") && v < schema["minimum"].get<double>()) {
        return SchemaViolation{path, "must be >= " + schema["minimum"].dump()};
      }
      if (schema.contains("maximum") && v > schema["maximum"].get<double>()) {
        return SchemaViolation{path, "must be <= " + schema["maximum"].dump()};
      }
      if (schema.contains("exclusiveMinimum") && v <= schema["exclusiveMinimum"].get<double>()) {
        return SchemaViolation{path, "must be > " + schema["exclusiveMinimum"].dump()};
      }
    }
    if (value.is_array()) {
      if (schema.contains("minItems") && value.size() < schema["minItems"].get<std::size_t>()) {
        return SchemaViolation{path, "needs at least " + schema["minItems"].dump() + " items"};
      }
      if (schema.contains("maxItems") && value.size() > schema["maxItems"].get<std::size_t>()) {
        return SchemaViolation{path, "allows at most " + schema["maxItems"].dump() + " items"};
      }
      if (schema.contains("items")) {
        for (std::size_t i = 0; i < value.size(); ++i) {
          if (auto v = check(schema["items"], value[i], path + "[" + std::to_string(i) + "]")) {
            return v;
          }
        }
      }
    }
    if (value.is_object()) {
      const json empty = json::object();
      const json& props = schema.contains("properties") ? schema["properties"] : empty;
      if (schema.contains("required")) {
        for (const auto& key : schema["required"]) {
          if (!value.contains(key.get<std::string>())) {
            return SchemaViolation{join(path, key.get<std::string>()), "required key is missing"};
          }
        }
      }
      const bool closed =
          schema.contains("additionalProperties") && schema["additionalProperties"] == false;
      for (const auto& [key, item] : value.items()) {
        if (props.contains(key)) {
          if (auto v = check(props[key], item, join(path, key))) return v;
        } else if (closed) {
          return SchemaViolation{join(path, key), "unknown key"};
        }
      }
    }
    if (schema.contains("oneOf")) {
      std::size_t matches = 0;
      std::optional<SchemaViolation> first;
      for (const auto& option : schema["oneOf"]) {
        auto v = check(option, value, path);
        if (!v) {
          ++matches;
        } else if (!first) {
          first = v;
        }
      }
      if (matches != 1) {
        return SchemaViolation{path, matches == 0 ? "does not match any allowed form"
                                                  : "matches more than one allowed form"};
      }
    }
    if (schema.contains("anyOf")) {
      bool any = false;
      for (const auto& option : schema["anyOf"]) any = any || !check(option, value, path);
      if (!any) return SchemaViolation{path, "does not match any allowed form"};
    }
    return std::nullopt;
  }

 private:
  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

  static bool single_type_matches(const std::string& t, const json& v) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "null") return v.is_null();
    throw std::logic_error("schema: unsupported type " + t);
  }

  static bool type_matches(const json& type, const json& v) {
    if (type.is_string()) return single_type_matches(type.get<std::string>(), v);
    for (const auto& t : type) {
      if (single_type_matches(t.get<std::string>(), v)) return true;
    }
    return false;
  }

  static std::string type_name(const json& type) {
    return type.is_string() ? type.get<std::string>() : type.dump();
  }

  const json& resolve(const json& ref) const {
    const std::string s = ref.get<std::string>();
    const std::string prefix = "#/$defs/";
    if (s.rfind(prefix, 0) != 0) throw std::logic_error("schema: unsupported $ref " + s);
    return root_.at("$defs").at(s.substr(prefix.size()));
  }

  const json& root_;
};

}  // namespace

std::optional<SchemaViolation> validate(const nlohmann::json& schema,
                                        const nlohmann::json& instance) {
  return Validator(schema).check(schema, instance, "");
}

const nlohmann::json& scenario_schema() {
  static const nlohmann::json schema = nlohmann::json::parse(kScenarioSchema);
  return schema;
}

}  // namespace crossmetric::runner
