#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "viewscout/geometry.hpp"

namespace viewscout {

// Maps camera poses to scores in [0, 1]. Implementations must be
// deterministic, return exactly one score per pose, and keep every score
// inside [0, 1]; callers treat violations as contract errors, not data.
// score_batch may be called concurrently from several threads.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual std::vector<double> score_batch(const std::vector<CameraPose>& poses) = 0;
};

// One attractive spot: a Gaussian spatial falloff optionally shaped by a
// cosine-power viewing lobe. With no preferred_axis the lobe points from the
// camera toward the hotspot center; a preferred_axis fixes the lobe axis
// instead (a billboard that only reads from one side).
struct Hotspot {
  Vec3 center;
  double sigma = 1.0;      // spatial falloff scale, meters
  double amplitude = 1.0;  // peak score, in (0, 1]
  double kappa = 0.0;      // directional sharpness; 0 means omnidirectional
  std::optional<Vec3> preferred_axis;  // unit vector
};

struct SyntheticScene {
  Region bounds;
  std::vector<Hotspot> hotspots;

  void validate() const;  // throws ConfigError
};

// score = clamp_[0,1]( max_h amplitude_h * exp(-|p - c_h|^2 / (2 sigma_h^2)) * g_h(d) )
// where g_h(d) = max(0, d . axis_h)^kappa_h away from the center and 1 when
// the camera sits exactly on c_h or kappa_h == 0.
double synthetic_score(const SyntheticScene& scene, const CameraPose& pose);

class SyntheticScorer final : public Scorer {
 public:
  explicit SyntheticScorer(SyntheticScene scene);
  std::vector<double> score_batch(const std::vector<CameraPose>& poses) override;
  const SyntheticScene& scene() const { return scene_; }

 private:
  SyntheticScene scene_;
};

struct GaussBump {
  double center = 0.0;
  double weight = 1.0;
  double sigma = 1.0;
};

// One-dimensional benchmark terrain on [lo, hi]: a weight-normalized sum of
// Gaussian bumps, clamped to [0, 1].
struct Scene1d {
  double lo = -10.0;
  double hi = 10.0;
  std::vector<GaussBump> bumps;
};

double scene_1d_score(const Scene1d& scene, double x);  // throws outside [lo, hi]

// Three bumps at x = -6, -1, 4 with weights 0.5, 0.7, 1.0 (sigma 0.8);
// the global maximum sits at x = 4.
Scene1d default_scene_1d();

// Region embedding for the 1d scene: [lo, hi] on x, y and z collapsed to 0.
Region scene_1d_region(const Scene1d& scene);

// Scores poses by their x coordinate alone; directions are ignored.
class Scene1dScorer final : public Scorer {
 public:
  explicit Scene1dScorer(Scene1d scene) : scene_(std::move(scene)) {}
  std::vector<double> score_batch(const std::vector<CameraPose>& poses) override;
  const Scene1d& scene() const { return scene_; }

 private:
  Scene1d scene_;
};

struct RegionReward {
  double reward = 0.0;
  int best_direction = 0;  // lowest index on ties
};

// Best score over a direction fan shot from one position. Issues exactly one
// score_batch call carrying all directions. Throws ScorerError when the
// scorer returns the wrong count or an out-of-range score.
RegionReward region_reward(const Vec3& position, const std::vector<Vec3>& directions, Scorer& scorer,
                           double fov_degrees = 60.0);

struct OracleResult {
  double best_score = 0.0;
  Vec3 best_position;
};

// Exhaustive sweep over the cell centers of a uniform grid (resolution cells
// per non-degenerate axis, one cell on degenerate axes), scoring each center
// with the same direction fan the explorers use. Ties keep the first cell in
// x-major iteration order. Requires resolution >= 2.
OracleResult grid_oracle(Scorer& scorer, const Region& bounds, int resolution, int n_dir);
OracleResult grid_oracle(const SyntheticScene& scene, int resolution, int n_dir);

}  // namespace viewscout
