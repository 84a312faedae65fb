#pragma once

#include <filesystem>
#include <string>

#include "viewscout/scorers.hpp"

namespace viewscout {

// Scene config format (JSON text):
//   {"bounds": {"min": [x,y,z], "max": [x,y,z]},
//    "hotspots": [{"center": [x,y,z], "sigma": s, "amplitude": a,
//                  "kappa": k, "preferred_axis": [x,y,z]?}]}
// Field names are fixed; unknown fields are rejected.  preferred_axis is the
// only optional field.  Loading validates the scene and throws ConfigError on
// any structural or semantic problem.

SyntheticScene scene_from_json(const std::string& text);
std::string scene_to_json(const SyntheticScene& scene);

SyntheticScene load_scene(const std::filesystem::path& path);
void save_scene(const SyntheticScene& scene, const std::filesystem::path& path);

}  // namespace viewscout
