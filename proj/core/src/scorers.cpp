#include "viewscout/scorers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "viewscout/errors.hpp"

namespace viewscout {

void SyntheticScene::validate() const {
  if (!bounds.well_formed()) throw ConfigError("scene bounds: min corner exceeds max corner");
  if (hotspots.empty()) throw ConfigError("scene needs at least one hotspot");
  for (std::size_t i = 0; i < hotspots.size(); ++i) {
    const Hotspot& h = hotspots[i];
    const std::string where = "hotspot " + std::to_string(i);
    if (!bounds.contains(h.center)) throw ConfigError(where + ": center outside bounds");
    if (!(h.sigma > 0.0)) throw ConfigError(where + ": sigma must be positive");
    if (!(h.amplitude > 0.0 && h.amplitude <= 1.0)) throw ConfigError(where + ": amplitude must be in (0, 1]");
    if (!(h.kappa >= 0.0)) throw ConfigError(where + ": kappa must be non-negative");
    if (h.preferred_axis) {
      const double n = h.preferred_axis->norm();
      if (std::abs(n - 1.0) > 1e-6) throw ConfigError(where + ": preferred_axis must be a unit vector");
    }
  }
}

double synthetic_score(const SyntheticScene& scene, const CameraPose& pose) {
  double best = 0.0;
  for (const Hotspot& h : scene.hotspots) {
    const Vec3 to_center = h.center - pose.position;
    const double dist_sq = to_center.dot(to_center);
    double v = h.amplitude * std::exp(-dist_sq / (2.0 * h.sigma * h.sigma));
    if (h.kappa > 0.0 && dist_sq > 0.0) {
      const Vec3 axis = h.preferred_axis ? *h.preferred_axis : (1.0 / std::sqrt(dist_sq)) * to_center;
      const double alignment = std::max(0.0, pose.direction.dot(axis));
      v *= std::pow(alignment, h.kappa);
    }
    best = std::max(best, v);
  }
  return std::clamp(best, 0.0, 1.0);
}

SyntheticScorer::SyntheticScorer(SyntheticScene scene) : scene_(std::move(scene)) { scene_.validate(); }

std::vector<double> SyntheticScorer::score_batch(const std::vector<CameraPose>& poses) {
  std::vector<double> scores;
  scores.reserve(poses.size());
  for (const CameraPose& pose : poses) scores.push_back(synthetic_score(scene_, pose));
  return scores;
}

double scene_1d_score(const Scene1d& scene, double x) {
  if (x < scene.lo || x > scene.hi) throw std::invalid_argument("scene_1d_score: x outside the scene interval");
  if (scene.bumps.empty()) throw std::invalid_argument("scene_1d_score: scene has no bumps");
  double total = 0.0;
  double weight_sum = 0.0;
  for (const GaussBump& b : scene.bumps) {
    if (!(b.weight > 0.0) || !(b.sigma > 0.0)) {
      throw std::invalid_argument("scene_1d_score: bump weight and sigma must be positive");
    }
    const double d = x - b.center;
    total += b.weight * std::exp(-(d * d) / (2.0 * b.sigma * b.sigma));
    weight_sum += b.weight;
  }
  return std::clamp(total / weight_sum, 0.0, 1.0);
}

Scene1d default_scene_1d() {
  return Scene1d{-10.0, 10.0, {{-6.0, 0.5, 0.8}, {-1.0, 0.7, 0.8}, {4.0, 1.0, 0.8}}};
}

Region scene_1d_region(const Scene1d& scene) {
  return Region{{scene.lo, 0.0, 0.0}, {scene.hi, 0.0, 0.0}};
}

std::vector<double> Scene1dScorer::score_batch(const std::vector<CameraPose>& poses) {
  std::vector<double> scores;
  scores.reserve(poses.size());
  for (const CameraPose& pose : poses) scores.push_back(scene_1d_score(scene_, pose.position.x));
  return scores;
}

RegionReward region_reward(const Vec3& position, const std::vector<Vec3>& directions, Scorer& scorer,
                           double fov_degrees) {
  if (directions.empty()) throw std::invalid_argument("region_reward: empty direction fan");
  std::vector<CameraPose> poses;
  poses.reserve(directions.size());
  for (const Vec3& d : directions) poses.push_back(CameraPose{position, d, fov_degrees});

  const std::vector<double> scores = scorer.score_batch(poses);
  if (scores.size() != poses.size()) {
    throw ScorerError("scorer returned " + std::to_string(scores.size()) + " scores for " +
                      std::to_string(poses.size()) + " poses");
  }
  RegionReward out{-1.0, 0};
  for (int i = 0; i < static_cast<int>(scores.size()); ++i) {
    const double s = scores[i];
    if (!(s >= 0.0 && s <= 1.0)) {
      throw ScorerError("scorer produced a score outside [0, 1]: " + std::to_string(s));
    }
    if (s > out.reward) {
      out.reward = s;
      out.best_direction = i;
    }
  }
  return out;
}

OracleResult grid_oracle(Scorer& scorer, const Region& bounds, int resolution, int n_dir) {
  if (resolution < 2) throw std::invalid_argument("grid_oracle: resolution must be >= 2");
  if (!bounds.well_formed()) throw std::invalid_argument("grid_oracle: malformed bounds");
  const Vec3 len = bounds.edge_lengths();
  int counts[3];
  for (int a = 0; a < 3; ++a) counts[a] = len[a] > 0.0 ? resolution : 1;

  const std::vector<Vec3> dirs = camera_directions(n_dir);
  OracleResult best{-1.0, bounds.center()};
  for (int ix = 0; ix < counts[0]; ++ix) {
    const double x = len.x > 0.0 ? bounds.lo.x + (ix + 0.5) * len.x / counts[0] : bounds.lo.x;
    for (int iy = 0; iy < counts[1]; ++iy) {
      const double y = len.y > 0.0 ? bounds.lo.y + (iy + 0.5) * len.y / counts[1] : bounds.lo.y;
      for (int iz = 0; iz < counts[2]; ++iz) {
        const double z = len.z > 0.0 ? bounds.lo.z + (iz + 0.5) * len.z / counts[2] : bounds.lo.z;
        const Vec3 p{x, y, z};
        const RegionReward r = region_reward(p, dirs, scorer);
        if (r.reward > best.best_score) {
          best.best_score = r.reward;
          best.best_position = p;
        }
      }
    }
  }
  return best;
}

OracleResult grid_oracle(const SyntheticScene& scene, int resolution, int n_dir) {
  SyntheticScorer scorer(scene);
  return grid_oracle(scorer, scene.bounds, resolution, n_dir);
}

}  // namespace viewscout
