#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <json.hpp>

#include "cloudsched/model.hpp"

namespace cloudsched {

namespace detail {

// Accepts integers exactly, strings via the rational parser ("12.5", "3/4"),
// and floating literals as their exact binary value.
inline Rational rational_field(const nlohmann::json& node, const std::string& at) {
  if (node.is_number_integer()) return Rational(node.get<std::int64_t>());
  if (node.is_number_unsigned()) return Rational(BigInt(node.get<std::uint64_t>()));
  if (node.is_number_float()) return Rational(node.get<double>());
  if (node.is_string()) {
    try {
      return parse_rational(node.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw ScenarioError(at + ": not a rational number");
    }
  }
  throw ScenarioError(at + ": expected a number or numeric string");
}

inline void check_id(const nlohmann::json& obj, std::size_t expected, const std::string& at) {
  if (!obj.contains("id")) return;  // ids are optional; position defines them
  const auto& id = obj.at("id");
  if (!id.is_number_unsigned() && !id.is_number_integer())
    throw ScenarioError(at + ".id: expected a non-negative integer");
  if (id.is_number_integer() && id.get<std::int64_t>() < 0)
    throw ScenarioError(at + ".id: expected a non-negative integer");
  if (id.get<std::uint64_t>() != expected)
    throw ScenarioError(at + ".id: expected " + std::to_string(expected) + ", got " +
                        id.dump() + " (ids must be unique and follow declaration order)");
}

}  // namespace detail

/// Parse a scenario document:
///   {"vms":[{"mips":10},{"mips":20}],
///    "cloudlets":[{"file_size":12}, ...],
///    "hosts":{"count":2,"ram_mb":512}}
/// Declaration order is instantiation/arrival order. `hosts` is optional,
/// descriptive metadata. Throws ScenarioError naming the offending field.
inline Scenario parse_scenario(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError(std::string("scenario: not valid JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) throw ScenarioError("scenario: expected a JSON object");
  if (!doc.contains("vms")) throw ScenarioError("vms: missing");
  if (!doc.contains("cloudlets")) throw ScenarioError("cloudlets: missing");
  if (!doc.at("vms").is_array()) throw ScenarioError("vms: expected an array");
  if (!doc.at("cloudlets").is_array()) throw ScenarioError("cloudlets: expected an array");

  Scenario s;
  std::size_t j = 0;
  for (const auto& vm : doc.at("vms")) {
    const std::string at = "vms[" + std::to_string(j) + "]";
    if (!vm.is_object()) throw ScenarioError(at + ": expected an object");
    if (!vm.contains("mips")) throw ScenarioError(at + ".mips: missing");
    detail::check_id(vm, j, at);
    s.vms.push_back({j, detail::rational_field(vm.at("mips"), at + ".mips")});
    ++j;
  }
  std::size_t i = 0;
  for (const auto& cl : doc.at("cloudlets")) {
    const std::string at = "cloudlets[" + std::to_string(i) + "]";
    if (!cl.is_object()) throw ScenarioError(at + ": expected an object");
    if (!cl.contains("file_size")) throw ScenarioError(at + ".file_size: missing");
    detail::check_id(cl, i, at);
    s.cloudlets.push_back({i, detail::rational_field(cl.at("file_size"), at + ".file_size")});
    ++i;
  }
  if (doc.contains("hosts")) {
    const auto& h = doc.at("hosts");
    if (!h.is_object()) throw ScenarioError("hosts: expected an object");
    HostInfo info;
    if (!h.contains("count") || !h.at("count").is_number_integer())
      throw ScenarioError("hosts.count: expected an integer");
    if (!h.contains("ram_mb") || !h.at("ram_mb").is_number_integer())
      throw ScenarioError("hosts.ram_mb: expected an integer");
    info.count = h.at("count").get<std::int64_t>();
    info.ram_mb = h.at("ram_mb").get<std::int64_t>();
    s.hosts = info;
  }
  validate_scenario(s);
  return s;
}

namespace detail {

// Integers stay JSON numbers; anything else round-trips as an exact "p/q".
inline nlohmann::json rational_to_json(const Rational& r) {
  if (denominator(r) == 1 && numerator(r) >= std::numeric_limits<std::int64_t>::min() &&
      numerator(r) <= std::numeric_limits<std::int64_t>::max())
    return numerator(r).convert_to<std::int64_t>();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace detail

inline nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json doc;
  doc["vms"] = nlohmann::json::array();
  for (const auto& vm : s.vms) doc["vms"].push_back({{"mips", detail::rational_to_json(vm.mips)}});
  doc["cloudlets"] = nlohmann::json::array();
  for (const auto& c : s.cloudlets)
    doc["cloudlets"].push_back({{"file_size", detail::rational_to_json(c.file_size)}});
  if (s.hosts) doc["hosts"] = {{"count", s.hosts->count}, {"ram_mb", s.hosts->ram_mb}};
  return doc;
}

inline std::string serialize_scenario(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

}  // namespace cloudsched
