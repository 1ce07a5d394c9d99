#pragma once
// JSON reading and writing: fans, perversities, reports and debug dumps.

#include <toric_ic/cohom.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace toric_ic::io {

using json = nlohmann::json;

// Unreadable input or a document that does not match the schema.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json parse_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

inline long integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<long>();
}

inline std::vector<int> index_list(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(static_cast<int>(integer(x, what)));
  return out;
}

}  // namespace detail

inline Fan fan_from_json(const json& j) {
  const long rank = detail::integer(detail::field(j, "rank"), "rank");
  const json& rays = detail::field(j, "rays");
  const json& cones = detail::field(j, "maximal_cones");
  if (!rays.is_array()) throw ParseError("rays must be an array");
  if (!cones.is_array()) throw ParseError("maximal_cones must be an array");
  std::vector<RayVector> rv;
  for (const auto& r : rays) {
    if (!r.is_array()) throw ParseError("each ray must be an array");
    RayVector v;
    for (const auto& x : r) v.push_back(detail::integer(x, "ray entry"));
    rv.push_back(std::move(v));
  }
  std::vector<std::vector<int>> mc;
  for (const auto& c : cones) mc.push_back(detail::index_list(c, "cone"));
  return load_fan(static_cast<int>(rank), rv, mc);
}

inline Fan fan_from_file(const std::string& path) { return fan_from_json(parse_text(read_file(path), path)); }

inline json fan_to_json(const Fan& fan) {
  json rays = json::array();
  for (const auto& r : fan.rays()) rays.push_back(r);
  json cones = json::array();
  for (int id : fan.maximal_cones()) cones.push_back(fan.cone(id).rays);
  return json{{"rank", fan.rank()}, {"rays", rays}, {"maximal_cones", cones}};
}

inline Perversity perversity_from_json(const Fan& fan, const json& j) {
  try {
    if (j.is_string()) return Perversity::preset(fan, j.get<std::string>());
    if (j.contains("name")) {
      if (!j.at("name").is_string()) throw ParseError("perversity name must be a string");
      return Perversity::preset(fan, j.at("name").get<std::string>());
    }
    if (j.contains("by_dimension")) {
      const json& m = j.at("by_dimension");
      if (!m.is_object()) throw ParseError("by_dimension must be an object");
      std::map<int, int> values;
      for (const auto& [k, v] : m.items()) {
        int d = 0;
        try {
          std::size_t used = 0;
          d = std::stoi(k, &used);
          if (used != k.size()) throw std::invalid_argument(k);
        } catch (const std::exception&) {
          throw ParseError("by_dimension key '" + k + "' is not an integer");
        }
        values[d] = static_cast<int>(detail::integer(v, "perversity value"));
      }
      return Perversity::by_dimension(fan, values);
    }
    if (j.contains("by_cone")) {
      const json& list = j.at("by_cone");
      if (!list.is_array()) throw ParseError("by_cone must be an array");
      std::map<int, int> values;
      for (const auto& e : list) {
        const int id = fan.find(detail::index_list(detail::field(e, "cone"), "cone"));
        if (id < 0) throw ParseError("by_cone names a ray set that is not a cone");
        values[id] = static_cast<int>(detail::integer(detail::field(e, "value"), "perversity value"));
      }
      return Perversity::by_cone(fan, values);
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  throw ParseError("perversity needs \"name\", \"by_dimension\" or \"by_cone\"");
}

// Accepts a preset name, inline JSON or a path to a JSON file.
inline Perversity perversity_from_arg(const Fan& fan, const std::string& arg) {
  if (arg == "middle" || arg == "top" || arg == "bottom") return Perversity::preset(fan, arg);
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && arg[first] == '{') return perversity_from_json(fan, parse_text(arg, "perversity"));
  return perversity_from_json(fan, parse_text(read_file(arg), arg));
}

inline std::string bidegree_key(int p, int q) { return std::to_string(p) + "," + std::to_string(q); }

inline json table_to_json(const CohomTable& t) {
  json out = json::object();
  for (const auto& [pq, d] : t) out[bidegree_key(pq.first, pq.second)] = d;
  return out;
}

inline CohomTable table_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("table must be an object");
  CohomTable t;
  for (const auto& [k, v] : j.items()) {
    const auto comma = k.find(',');
    if (comma == std::string::npos) throw ParseError("bad bidegree key '" + k + "'");
    try {
      t[{std::stoi(k.substr(0, comma)), std::stoi(k.substr(comma + 1))}] = v.get<std::size_t>();
    } catch (const std::exception&) {
      throw ParseError("bad bidegree entry '" + k + "'");
    }
  }
  return t;
}

inline json serre_to_json(const SerreReport& rep) {
  json v = json::array();
  for (const auto& x : rep.violations) v.push_back({{"i", x.i}, {"j", x.j}, {"lhs", x.lhs}, {"rhs", x.rhs}});
  return json{{"ok", rep.ok()}, {"violations", v}};
}

inline json pairing_to_json(const DualityPairingReport& rep) {
  json v = json::array();
  for (const auto& c : rep.conditions.violations)
    v.push_back({{"what", "condition " + std::to_string(c.condition)}, {"cone", c.cone}, {"i", c.i}, {"j", c.j}});
  for (const auto& m : rep.mismatches) v.push_back({{"what", m.what}, {"cone", m.cone}});
  return json{{"ok", rep.ok()}, {"violations", v}};
}

// {"betti":[...], "gamma":{"p,q":dim}, "duality":{"ok":flag,"violations":[...]}}
inline json report_json(const std::vector<long>& betti, const CohomTable& gamma, const SerreReport& serre) {
  return json{{"betti", betti}, {"gamma", table_to_json(gamma)}, {"duality", serre_to_json(serre)}};
}

inline std::string degree_label(int a, int b) { return std::to_string(a) + "/" + std::to_string(b); }

// Per-cone term dimensions and nonzero mixing maps, keyed "a/b".
inline json dump_gem(const GemComplex& l) {
  json cones = json::object();
  for (int s = 0; s < l.size(); ++s) {
    json terms = json::object();
    for (const auto& [ij, d] : term_dims(l.at(s))) terms[bidegree_key(ij.first, ij.second)] = d;
    cones[std::to_string(s)] = terms;
  }
  json mixes = json::object();
  for (const auto& [key, m] : l.mixes()) {
    json degrees = json::array();
    for (const auto& [i, _] : m) degrees.push_back(i);
    mixes[degree_label(key.first, key.second)] = degrees;
  }
  return json{{"cones", cones}, {"mixing", mixes}};
}

}  // namespace toric_ic::io
