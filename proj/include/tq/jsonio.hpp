#pragma once

// JSON input formats for fans and bundle lists, and deterministic report
// serialization.

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tq/fan.hpp"
#include "tq/intmat.hpp"

namespace tq {

using Json = nlohmann::ordered_json;

namespace detail {

inline Int json_int(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw error("Parse", where + ": expected an integer");
}

inline std::vector<Int> json_int_vector(const Json& j,
                                        const std::string& where) {
  if (!j.is_array()) throw error("Parse", where + ": expected an array");
  std::vector<Int> v;
  for (const auto& x : j) v.push_back(json_int(x, where));
  return v;
}

}  // namespace detail

inline Fan parse_fan(const Json& j) {
  if (!j.is_object()) throw error("Parse", "fan: expected an object");
  for (const char* key : {"rank", "rays", "max_cones", "complete"})
    if (!j.contains(key))
      throw error("Parse", std::string("fan: missing field '") + key + "'");
  Fan f;
  if (!j["rank"].is_number_integer() || j["rank"].get<int>() <= 0)
    throw error("Parse", "fan: rank must be a positive integer");
  f.rank = j["rank"].get<int>();
  for (const auto& ray : j["rays"]) {
    auto v = detail::json_int_vector(ray, "fan ray");
    if (static_cast<int>(v.size()) != f.rank)
      throw error("Parse", "fan: ray length differs from rank");
    f.rays.push_back(v);
  }
  if (f.rays.empty()) throw error("Parse", "fan: at least one ray required");
  for (const auto& cone : j["max_cones"]) {
    if (!cone.is_array())
      throw error("Parse", "fan: max_cones entries must be arrays");
    std::vector<int> c;
    for (const auto& x : cone) {
      if (!x.is_number_integer())
        throw error("Parse", "fan: cone entries must be ray indices");
      int i = x.get<int>();
      if (i < 0 || i >= static_cast<int>(f.rays.size()))
        throw error("Parse", "fan: cone ray index out of range");
      c.push_back(i);
    }
    f.max_cones.push_back(c);
  }
  if (f.max_cones.empty())
    throw error("Parse", "fan: at least one maximal cone required");
  if (!j["complete"].is_boolean())
    throw error("Parse", "fan: complete must be a boolean");
  f.complete = j["complete"].get<bool>();
  return f;
}

inline std::vector<TWeilDivisor> parse_bundle_list(const Json& j,
                                                   std::size_t num_rays) {
  if (!j.is_object() || !j.contains("bundles"))
    throw error("Parse", "bundle list: missing field 'bundles'");
  std::vector<TWeilDivisor> out;
  for (const auto& b : j["bundles"]) {
    auto v = detail::json_int_vector(b, "bundle");
    if (v.size() != num_rays)
      throw error("Parse", "bundle list: divisor length differs from ray count");
    out.push_back(v);
  }
  if (out.empty()) throw error("Parse", "bundle list: empty");
  for (const Int& x : out[0])
    if (x != 0)
      throw error("Parse", "bundle list: first bundle must be the zero divisor");
  return out;
}

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("Parse", "cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& ex) {
    throw error("Parse", std::string("invalid JSON: ") + ex.what());
  }
  return j;
}

inline Json int_vector_json(const std::vector<Int>& v) {
  Json a = Json::array();
  for (const Int& x : v) {
    if (x.fits_slong_p())
      a.push_back(x.get_si());
    else
      a.push_back(x.get_str());
  }
  return a;
}

}  // namespace tq
