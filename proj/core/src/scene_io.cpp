#include "viewscout/scene_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "viewscout/errors.hpp"

namespace viewscout {

namespace {

using nlohmann::json;

void reject_unknown_fields(const json& object, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    (void)value;
    if (!allowed.contains(key)) {
      throw ConfigError("unknown field \"" + key + "\" in " + where);
    }
  }
}

Vec3 parse_vec3(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 3) {
    throw ConfigError(where + " must be an array of 3 numbers");
  }
  for (const auto& component : value) {
    if (!component.is_number()) throw ConfigError(where + " must be an array of 3 numbers");
  }
  return {value[0].get<double>(), value[1].get<double>(), value[2].get<double>()};
}

double parse_number(const json& object, const std::string& key, const std::string& where) {
  if (!object.contains(key)) throw ConfigError(where + " is missing \"" + key + "\"");
  if (!object[key].is_number()) throw ConfigError(where + "." + key + " must be a number");
  return object[key].get<double>();
}

json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

}  // namespace

SyntheticScene scene_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("scene is not valid JSON: ") + err.what());
  }
  if (!root.is_object()) throw ConfigError("scene must be a JSON object");
  reject_unknown_fields(root, {"bounds", "hotspots"}, "scene");

  if (!root.contains("bounds") || !root["bounds"].is_object()) {
    throw ConfigError("scene is missing its \"bounds\" object");
  }
  const json& bounds = root["bounds"];
  reject_unknown_fields(bounds, {"min", "max"}, "bounds");
  if (!bounds.contains("min") || !bounds.contains("max")) {
    throw ConfigError("bounds needs both \"min\" and \"max\"");
  }

  SyntheticScene scene;
  scene.bounds.lo = parse_vec3(bounds["min"], "bounds.min");
  scene.bounds.hi = parse_vec3(bounds["max"], "bounds.max");

  if (!root.contains("hotspots") || !root["hotspots"].is_array()) {
    throw ConfigError("scene is missing its \"hotspots\" array");
  }
  for (std::size_t i = 0; i < root["hotspots"].size(); ++i) {
    const json& entry = root["hotspots"][i];
    const std::string where = "hotspots[" + std::to_string(i) + "]";
    if (!entry.is_object()) throw ConfigError(where + " must be an object");
    reject_unknown_fields(entry, {"center", "sigma", "amplitude", "kappa", "preferred_axis"}, where);
    if (!entry.contains("center")) throw ConfigError(where + " is missing \"center\"");

    Hotspot hotspot;
    hotspot.center = parse_vec3(entry["center"], where + ".center");
    hotspot.sigma = parse_number(entry, "sigma", where);
    hotspot.amplitude = parse_number(entry, "amplitude", where);
    hotspot.kappa = parse_number(entry, "kappa", where);
    if (entry.contains("preferred_axis")) {
      hotspot.preferred_axis = parse_vec3(entry["preferred_axis"], where + ".preferred_axis");
    }
    scene.hotspots.push_back(hotspot);
  }

  scene.validate();
  return scene;
}

std::string scene_to_json(const SyntheticScene& scene) {
  json root;
  root["bounds"]["min"] = vec3_to_json(scene.bounds.lo);
  root["bounds"]["max"] = vec3_to_json(scene.bounds.hi);
  root["hotspots"] = json::array();
  for (const Hotspot& hotspot : scene.hotspots) {
    json entry;
    entry["center"] = vec3_to_json(hotspot.center);
    entry["sigma"] = hotspot.sigma;
    entry["amplitude"] = hotspot.amplitude;
    entry["kappa"] = hotspot.kappa;
    if (hotspot.preferred_axis) entry["preferred_axis"] = vec3_to_json(*hotspot.preferred_axis);
    root["hotspots"].push_back(entry);
  }
  return root.dump(2) + "\n";
}

SyntheticScene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scene file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return scene_from_json(text.str());
  } catch (const ConfigError& err) {
    throw ConfigError(path.string() + ": " + err.what());
  }
}

void save_scene(const SyntheticScene& scene, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write scene file " + path.string());
  out << scene_to_json(scene);
  if (!out) throw ConfigError("failed while writing " + path.string());
}

}  // namespace viewscout
