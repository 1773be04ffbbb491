#pragma once

// Workbench configuration: group presentation, twist angles, candidate
// subgroups, and scan budgets. File format is JSON with 1-based coordinate
// indices; everything in memory is 0-based. parse/serialize round-trip
// exactly on canonical form.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cartan/cocycle.hpp"
#include "cartan/group.hpp"
#include "cartan/subgroup.hpp"

namespace cartan {

using Json = nlohmann::ordered_json;

struct WorkbenchConfig {
  std::string name;
  GroupDescriptor group;
  CocycleDescriptor cocycle;
  std::vector<std::pair<std::string, SubgroupDescriptor>> subgroups;  // file order
  std::int64_t ball_radius = 3;
  std::int64_t k_max = 4;
  std::uint64_t samples = 500;
  std::uint64_t seed = 0;
  std::vector<Coords> commutant_probe;  // support of the commutant test element

  const SubgroupDescriptor& subgroup(const std::string& n) const {
    for (const auto& [name_, s] : subgroups)
      if (name_ == n) return s;
    throw ConfigError("unknown subgroup \"" + n + "\"");
  }

  const std::string& first_subgroup_name() const {
    if (subgroups.empty()) throw ConfigError("config declares no subgroups");
    return subgroups.front().first;
  }
};

/// Smallest root-of-unity order that accommodates i and every cocycle value.
inline std::int64_t session_conductor(const WorkbenchConfig& cfg) {
  BigInt l = lcm(BigInt(4), cfg.cocycle.angle_lcm());
  if (l > 1000000) throw ConfigError("cocycle denominators force an impractical conductor");
  return static_cast<std::int64_t>(l);
}

namespace detail {

inline ConfigError config_error(const std::string& path, const std::string& what) {
  return ConfigError(path + ": " + what);
}

inline const Json& require(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw config_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw config_error(path, std::string("missing key \"") + key + "\"");
  return *it;
}

inline std::int64_t int_at(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw config_error(path, "expected an integer");
  return j.get<std::int64_t>();
}

/// 1-based coordinate index from the file, checked against rank.
inline std::size_t coord_index(const Json& j, std::size_t rank, const std::string& path) {
  std::int64_t v = int_at(j, path);
  if (v < 1 || static_cast<std::size_t>(v) > rank)
    throw config_error(path, "coordinate index " + std::to_string(v) + " out of range 1.." +
                                 std::to_string(rank));
  return static_cast<std::size_t>(v - 1);
}

}  // namespace detail

inline WorkbenchConfig parse_config(const std::string& text, const std::string& name) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(name + ": not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw detail::config_error("$", "expected a JSON object");

  WorkbenchConfig cfg;
  cfg.name = name;

  const Json& jg = detail::require(j, "group", "$");
  const Json& jcomps = detail::require(jg, "components", "$.group");
  if (!jcomps.is_array() || jcomps.empty())
    throw detail::config_error("$.group.components", "expected a nonempty array");
  std::vector<Component> comps;
  for (std::size_t i = 0; i < jcomps.size(); ++i) {
    std::string path = "$.group.components[" + std::to_string(i) + "]";
    if (!jcomps[i].is_string()) throw detail::config_error(path, "expected \"Z\" or \"Z/m\"");
    std::string s = jcomps[i].get<std::string>();
    if (s == "Z") {
      comps.push_back({false, 0});
    } else if (s.rfind("Z/", 0) == 0) {
      std::int64_t m = 0;
      try {
        std::size_t used = 0;
        m = std::stoll(s.substr(2), &used);
        if (used != s.size() - 2) throw std::invalid_argument(s);
      } catch (const std::exception&) {
        throw detail::config_error(path, "cannot read modulus in \"" + s + "\"");
      }
      if (m < 2) throw detail::config_error(path, "torsion modulus must be >= 2");
      comps.push_back({true, m});
    } else {
      throw detail::config_error(path, "expected \"Z\" or \"Z/m\", got \"" + s + "\"");
    }
  }
  std::size_t rank = comps.size();

  std::vector<TwistTerm> twist;
  if (auto it = jg.find("twist"); it != jg.end()) {
    if (!it->is_array()) throw detail::config_error("$.group.twist", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string path = "$.group.twist[" + std::to_string(i) + "]";
      const Json& jt = (*it)[i];
      TwistTerm t;
      t.target = detail::coord_index(detail::require(jt, "target", path), rank, path + ".target");
      t.left = detail::coord_index(detail::require(jt, "left", path), rank, path + ".left");
      t.right = detail::coord_index(detail::require(jt, "right", path), rank, path + ".right");
      t.coeff = detail::int_at(detail::require(jt, "coeff", path), path + ".coeff");
      if (t.left <= t.target || t.right <= t.target)
        throw detail::config_error(
            path, "twist is not triangular: target " + std::to_string(t.target + 1) +
                      " must be strictly below left " + std::to_string(t.left + 1) +
                      " and right " + std::to_string(t.right + 1));
      twist.push_back(t);
    }
  }
  try {
    cfg.group = GroupDescriptor(std::move(comps), std::move(twist));
  } catch (const Error& e) {
    throw detail::config_error("$.group", e.what());
  }

  std::vector<CocycleTerm> cterms;
  if (auto it = j.find("cocycle"); it != j.end()) {
    if (!it->is_array()) throw detail::config_error("$.cocycle", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string path = "$.cocycle[" + std::to_string(i) + "]";
      const Json& jt = (*it)[i];
      CocycleTerm t;
      t.left = detail::coord_index(detail::require(jt, "left", path), rank, path + ".left");
      t.right = detail::coord_index(detail::require(jt, "right", path), rank, path + ".right");
      const Json& ja = detail::require(jt, "angle", path);
      if (!ja.is_string()) throw detail::config_error(path + ".angle", "expected \"p/q\"");
      try {
        t.angle = parse_circle(ja.get<std::string>());
      } catch (const Error& e) {
        throw detail::config_error(path + ".angle", e.what());
      }
      cterms.push_back(std::move(t));
    }
  }
  try {
    cfg.cocycle = CocycleDescriptor(cfg.group, std::move(cterms));
  } catch (const Error& e) {
    throw detail::config_error("$.cocycle", e.what());
  }

  const Json& jsub = detail::require(j, "subgroups", "$");
  if (!jsub.is_object() || jsub.empty())
    throw detail::config_error("$.subgroups", "expected a nonempty object");
  for (auto it = jsub.begin(); it != jsub.end(); ++it) {
    std::string path = "$.subgroups." + it.key();
    if (!it->is_array() || it->size() != rank)
      throw detail::config_error(path, "expected an array of " + std::to_string(rank) +
                                           " scalings");
    std::vector<std::int64_t> ks;
    for (std::size_t i = 0; i < it->size(); ++i)
      ks.push_back(detail::int_at((*it)[i], path + "[" + std::to_string(i) + "]"));
    try {
      cfg.subgroups.emplace_back(it.key(), SubgroupDescriptor(cfg.group, std::move(ks)));
    } catch (const Error& e) {
      throw detail::config_error(path, e.what());
    }
  }

  auto opt_int = [&](const char* key, std::int64_t dflt, std::int64_t lo) {
    auto it = j.find(key);
    if (it == j.end()) return dflt;
    std::int64_t v = detail::int_at(*it, std::string("$.") + key);
    if (v < lo)
      throw detail::config_error(std::string("$.") + key,
                                 "must be >= " + std::to_string(lo));
    return v;
  };
  cfg.ball_radius = opt_int("ball_radius", 3, 1);
  cfg.k_max = opt_int("k_max", 4, 1);
  cfg.samples = static_cast<std::uint64_t>(opt_int("samples", 500, 0));
  cfg.seed = static_cast<std::uint64_t>(opt_int("seed", 0, 0));

  if (auto it = j.find("commutant_probe"); it != j.end()) {
    if (!it->is_array()) throw detail::config_error("$.commutant_probe", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string path = "$.commutant_probe[" + std::to_string(i) + "]";
      const Json& je = (*it)[i];
      if (!je.is_array() || je.size() != rank)
        throw detail::config_error(path, "expected a coordinate vector of length " +
                                             std::to_string(rank));
      Coords c;
      for (std::size_t k = 0; k < je.size(); ++k)
        c.push_back(detail::int_at(je[k], path + "[" + std::to_string(k) + "]"));
      cfg.commutant_probe.push_back(std::move(c));
    }
  }
  return cfg;
}

/// Canonical rendering; parse_config(serialize_config(cfg)) reproduces cfg
/// and serializing again reproduces the same bytes.
inline std::string serialize_config(const WorkbenchConfig& cfg) {
  Json j;
  Json comps = Json::array();
  for (const auto& cp : cfg.group.components())
    comps.push_back(cp.torsion ? "Z/" + std::to_string(cp.modulus) : "Z");
  Json twist = Json::array();
  for (const auto& t : cfg.group.twist()) {
    Json jt;
    jt["target"] = t.target + 1;
    jt["left"] = t.left + 1;
    jt["right"] = t.right + 1;
    jt["coeff"] = t.coeff;
    twist.push_back(std::move(jt));
  }
  j["group"] = {{"components", std::move(comps)}, {"twist", std::move(twist)}};
  Json cocycle = Json::array();
  for (const auto& t : cfg.cocycle.terms()) {
    Json jt;
    jt["left"] = t.left + 1;
    jt["right"] = t.right + 1;
    jt["angle"] = t.angle.str();
    cocycle.push_back(std::move(jt));
  }
  j["cocycle"] = std::move(cocycle);
  Json subs = Json::object();
  for (const auto& [name, s] : cfg.subgroups) subs[name] = s.scalings();
  j["subgroups"] = std::move(subs);
  j["ball_radius"] = cfg.ball_radius;
  j["k_max"] = cfg.k_max;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  if (!cfg.commutant_probe.empty()) j["commutant_probe"] = cfg.commutant_probe;
  return j.dump(2) + "\n";
}

namespace builtin {

inline const char* g5_json() {
  return R"cfg({
  "group": {
    "components": ["Z", "Z", "Z", "Z", "Z"],
    "twist": [
      {"target": 1, "left": 5, "right": 3, "coeff": 2},
      {"target": 2, "left": 5, "right": 4, "coeff": 2}
    ]
  },
  "cocycle": [{"left": 4, "right": 1, "angle": "1/2"}],
  "subgroups": {
    "S0": [1, 1, 0, 0, 1],
    "S1": [1, 1, 1, 2, 0],
    "S2": [2, 1, 1, 1, 0]
  },
  "ball_radius": 3,
  "k_max": 4,
  "samples": 500,
  "seed": 0,
  "commutant_probe": [[0, 0, 0, 1, 0]]
}
)cfg";
}

inline const char* g5mod4_json() {
  return R"cfg({
  "group": {
    "components": ["Z/4", "Z/4", "Z", "Z", "Z/4"],
    "twist": [
      {"target": 1, "left": 5, "right": 3, "coeff": 2},
      {"target": 2, "left": 5, "right": 4, "coeff": 2}
    ]
  },
  "cocycle": [{"left": 4, "right": 1, "angle": "1/2"}],
  "subgroups": {
    "S": [1, 1, 1, 2, 2]
  },
  "ball_radius": 4,
  "k_max": 4,
  "samples": 500,
  "seed": 0,
  "commutant_probe": [[0, 0, 0, 0, 1], [2, 0, 0, 0, 1]]
}
)cfg";
}

inline const char* rotation_json() {
  return R"cfg({
  "group": {
    "components": ["Z", "Z"],
    "twist": []
  },
  "cocycle": [{"left": 2, "right": 1, "angle": "1/5"}],
  "subgroups": {
    "S": [0, 1]
  },
  "ball_radius": 3,
  "k_max": 4,
  "samples": 500,
  "seed": 0
}
)cfg";
}

}  // namespace builtin

inline std::vector<std::string> builtin_ids() { return {"g5", "g5mod4", "rotation"}; }

inline WorkbenchConfig builtin_config(const std::string& id) {
  if (id == "g5") return parse_config(builtin::g5_json(), "g5");
  if (id == "g5mod4") return parse_config(builtin::g5mod4_json(), "g5mod4");
  if (id == "rotation") return parse_config(builtin::rotation_json(), "rotation");
  throw ConfigError("unknown builtin config \"" + id + "\"");
}

/// Loads a config from a file path, or falls back to a builtin id.
inline WorkbenchConfig load_config(const std::string& spec) {
  std::ifstream in(spec);
  if (in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string stem = spec;
    if (auto pos = stem.find_last_of("/\\"); pos != std::string::npos) stem = stem.substr(pos + 1);
    if (stem.size() > 5 && stem.substr(stem.size() - 5) == ".json")
      stem = stem.substr(0, stem.size() - 5);
    return parse_config(buf.str(), stem);
  }
  for (const auto& id : builtin_ids())
    if (id == spec) return builtin_config(id);
  throw ConfigError("\"" + spec + "\" is neither a readable file nor a builtin config id");
}

}  // namespace cartan
