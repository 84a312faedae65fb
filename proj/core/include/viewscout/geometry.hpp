#pragma once

#include <array>
#include <utility>
#include <vector>

#include "viewscout/rng.hpp"

namespace viewscout {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int axis) const;
  double& operator[](int axis);

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const;
  double distance_to(const Vec3& o) const;
  Vec3 normalized() const;  // throws std::invalid_argument on the zero vector

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
  bool operator==(const Vec3&) const = default;
};

// Axis-aligned cuboid given by its min/max corners, in meters. Axes may have
// zero length; that embeds lower-dimensional search spaces.
struct Region {
  Vec3 lo;
  Vec3 hi;

  Vec3 center() const { return {lo.x + 0.5 * (hi.x - lo.x), lo.y + 0.5 * (hi.y - lo.y), lo.z + 0.5 * (hi.z - lo.z)}; }
  Vec3 edge_lengths() const { return hi - lo; }
  double volume() const;
  bool contains(const Vec3& p) const;  // closed on all faces
  bool well_formed() const { return lo.x <= hi.x && lo.y <= hi.y && lo.z <= hi.z; }
  bool operator==(const Region&) const = default;
};

enum class DivisionPolicy { kSoftmax, kArgmax };

// Edge-length-driven axis distribution: pi_i = exp(L_i / |L|) / sum_j exp(L_j / |L|).
// Throws std::invalid_argument when all edges are zero.
std::array<double, 3> softmax_axis_probs(const Vec3& lengths);

// Index of the longest edge; ties resolve to the lowest axis (x before y before z).
int argmax_axis(const Vec3& lengths);

// Halves the region along one axis chosen by `policy`. Zero-length axes are
// excluded from the candidates; a region with no positive axis cannot be
// divided and throws. Returns (lower half, upper half).
std::pair<Region, Region> divide(const Region& region, DivisionPolicy policy, Rng& axis_rng);

// Near-uniform unit directions on the sphere (spherical Fibonacci spiral):
//   y_k = 1 - 2k/(n_dir-1),  r = sqrt(1 - y_k^2),  theta = (1 + sqrt 5) pi k,
//   d_k = (r cos theta, y_k, r sin theta).
// The first and last directions are exactly (0, 1, 0) and (0, -1, 0).
// Requires n_dir >= 2 (the formula divides by n_dir - 1).
std::vector<Vec3> fibonacci_directions(int n_dir);

// Direction fan used by the exploration pipeline: the Fibonacci set for
// n_dir >= 2, and the single direction (0, 1, 0) for n_dir == 1.
std::vector<Vec3> camera_directions(int n_dir);

struct CameraPose {
  Vec3 position;
  Vec3 direction;  // unit vector
  double fov_degrees = 60.0;
  bool operator==(const CameraPose&) const = default;
};

}  // namespace viewscout
