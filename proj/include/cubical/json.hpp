#pragma once

// JSON encodings for intervals and areas. Bounds are strings: "n", "p/q",
// "-inf" or "+inf". Areas are emitted in canonical cube order so output is
// byte-stable.

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "area.hpp"

namespace cubical {

using Json = nlohmann::ordered_json;

class json_format_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Json bound_to_json(const Endpoint& e) {
  switch (e.kind()) {
    case BoundKind::negative_infinity: return "-inf";
    case BoundKind::positive_infinity: return "+inf";
    case BoundKind::finite: break;
  }
  return to_string(e.value());
}

inline Json interval_to_json(const Interval& iv) {
  Json j;
  j["lo"] = bound_to_json(iv.lo());
  j["lo_closed"] = iv.lo().is_closed();
  j["hi"] = bound_to_json(iv.hi());
  j["hi_closed"] = iv.hi().is_closed();
  return j;
}

inline Json area_to_json(const CubicalArea& a) {
  Json cubes = Json::array();
  for (const Cube& c : a.cubes()) {
    Json row = Json::array();
    for (const Interval& iv : c.factors()) row.push_back(interval_to_json(iv));
    cubes.push_back(std::move(row));
  }
  Json j;
  j["dim"] = a.dim();
  j["cubes"] = std::move(cubes);
  return j;
}

inline Json rationals_to_json(std::span<const Rational> p) {
  Json j = Json::array();
  for (const Rational& q : p) j.push_back(to_string(q));
  return j;
}

namespace detail {

inline Endpoint bound_from_json(const Json& j, bool closed, bool is_lower) {
  if (!j.is_string()) throw json_format_error("bound must be a string");
  const auto s = j.get<std::string>();
  if (s == "-inf" || s == "+inf") {
    if (closed) throw json_format_error("infinite bound cannot be closed");
    if ((s == "-inf") != is_lower) throw json_format_error("infinite bound on the wrong side: " + s);
    return s == "-inf" ? Endpoint::neg_inf() : Endpoint::pos_inf();
  }
  try {
    return Endpoint::finite(parse_rational(s), closed);
  } catch (const std::invalid_argument& e) {
    throw json_format_error(e.what());
  }
}

}  // namespace detail

inline Interval interval_from_json(const Json& j) {
  if (!j.is_object()) throw json_format_error("interval must be an object");
  for (const char* key : {"lo", "lo_closed", "hi", "hi_closed"})
    if (!j.contains(key)) throw json_format_error(std::string("interval missing key '") + key + "'");
  if (!j["lo_closed"].is_boolean() || !j["hi_closed"].is_boolean())
    throw json_format_error("closed flags must be booleans");
  auto lo = detail::bound_from_json(j["lo"], j["lo_closed"].get<bool>(), true);
  auto hi = detail::bound_from_json(j["hi"], j["hi_closed"].get<bool>(), false);
  auto iv = Interval::make(lo, hi);
  if (!iv) throw json_format_error("empty interval in input");
  return *iv;
}

/// Reads any cube family and normalizes it; input need not be canonical.
inline CubicalArea area_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("cubes"))
    throw json_format_error("area must be an object with 'dim' and 'cubes'");
  if (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0)
    throw json_format_error("'dim' must be a positive integer");
  const auto dim = j["dim"].get<std::size_t>();
  if (!j["cubes"].is_array()) throw json_format_error("'cubes' must be an array");
  std::vector<Cube> cubes;
  for (const Json& row : j["cubes"]) {
    if (!row.is_array() || row.size() != dim) throw json_format_error("cube must list exactly 'dim' intervals");
    std::vector<Interval> f;
    for (const Json& iv : row) f.push_back(interval_from_json(iv));
    cubes.emplace_back(std::move(f));
  }
  return normalize(CubeFamily(dim, std::move(cubes)));
}

}  // namespace cubical
