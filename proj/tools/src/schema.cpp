#include "iprob_cli/schema.hpp"

#include <optional>

#include "iprob/error.hpp"
#include "schema_text.hpp"

namespace iprob::cli {

using nlohmann::json;

namespace {

bool has_type(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "null") return v.is_null();
  throw ConfigError("schema: unknown type '" + t + "'");
}

const json& resolve(const json& root, const json& node) {
  if (!node.contains("$ref")) return node;
  const std::string ref = node.at("$ref").get<std::string>();
  const std::string prefix = "#/$defs/";
  if (ref.rfind(prefix, 0) != 0) throw ConfigError("schema: unsupported $ref " + ref);
  return resolve(root, root.at("$defs").at(ref.substr(prefix.size())));
}

// Returns the first violation, if any.
std::optional<std::string> check(const json& root, const json& raw, const json& v, const std::string& path) {
  const json& s = resolve(root, raw);
  const std::string where = path.empty() ? "<root>" : path;

  if (s.contains("anyOf")) {
    std::string first;
    for (const auto& alt : s.at("anyOf")) {
      auto err = check(root, alt, v, path);
      if (!err) return std::nullopt;
      if (first.empty()) first = *err;
    }
    return where + ": matches none of the allowed forms (first mismatch: " + first + ")";
  }
  if (s.contains("type") && !has_type(v, s.at("type").get<std::string>())) {
    return where + ": expected " + s.at("type").get<std::string>();
  }
  if (s.contains("enum")) {
    bool found = false;
    for (const auto& e : s.at("enum")) found = found || e == v;
    if (!found) return where + ": value " + v.dump() + " not in " + s.at("enum").dump();
  }
  if (v.is_number()) {
    const double x = v.get<double>();
    if (s.contains("minimum") && x < s.at("minimum").get<double>()) return where + ": below minimum";
    if (s.contains("maximum") && x > s.at("maximum").get<double>()) return where + ": above maximum";
    if (s.contains("exclusiveMinimum") && x <= s.at("exclusiveMinimum").get<double>()) {
      return where + ": must exceed " + s.at("exclusiveMinimum").dump();
    }
    if (s.contains("exclusiveMaximum") && x >= s.at("exclusiveMaximum").get<double>()) {
      return where + ": must be below " + s.at("exclusiveMaximum").dump();
    }
  }
  if (v.is_array()) {
    if (s.contains("minItems") && v.size() < s.at("minItems").get<std::size_t>()) {
      return where + ": needs at least " + s.at("minItems").dump() + " items";
    }
    if (s.contains("items")) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (auto err = check(root, s.at("items"), v[i], path + "[" + std::to_string(i) + "]")) return err;
      }
    }
  }
  if (v.is_object()) {
    if (s.contains("required")) {
      for (const auto& k : s.at("required")) {
        if (!v.contains(k.get<std::string>())) return where + ": missing key '" + k.get<std::string>() + "'";
      }
    }
    const json none = json::object();
    const json& props = s.contains("properties") ? s.at("properties") : none;
    for (const auto& [k, child] : v.items()) {
      const std::string sub = path.empty() ? k : path + "." + k;
      if (props.contains(k)) {
        if (auto err = check(root, props.at(k), child, sub)) return err;
      } else if (s.contains("additionalProperties")) {
        const json& ap = s.at("additionalProperties");
        if (ap.is_boolean()) {
          if (!ap.get<bool>()) return where + ": unknown key '" + k + "'";
        } else if (auto err = check(root, ap, child, sub)) {
          return err;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

const json& config_schema() {
  static const json schema = json::parse(kConfigSchemaText);
  return schema;
}

void validate(const json& root, const std::string& def, const json& instance) {
  if (!root.contains("$defs") || !root.at("$defs").contains(def)) {
    throw ConfigError("schema has no definition '" + def + "'");
  }
  if (auto err = check(root, root.at("$defs").at(def), instance, "")) throw ConfigError("config " + *err);
}

}  // namespace iprob::cli
