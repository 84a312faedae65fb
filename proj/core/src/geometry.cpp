#include "viewscout/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace viewscout {

double Vec3::operator[](int axis) const {
  switch (axis) {
    case 0: return x;
    case 1: return y;
    case 2: return z;
    default: throw std::out_of_range("Vec3: axis index out of range");
  }
}

double& Vec3::operator[](int axis) {
  switch (axis) {
    case 0: return x;
    case 1: return y;
    case 2: return z;
    default: throw std::out_of_range("Vec3: axis index out of range");
  }
}

double Vec3::norm() const { return std::sqrt(dot(*this)); }

double Vec3::distance_to(const Vec3& o) const { return (*this - o).norm(); }

Vec3 Vec3::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw std::invalid_argument("Vec3::normalized: zero vector");
  return (1.0 / n) * *this;
}

double Region::volume() const {
  const Vec3 len = edge_lengths();
  return len.x * len.y * len.z;
}

bool Region::contains(const Vec3& p) const {
  return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z && p.z <= hi.z;
}

std::array<double, 3> softmax_axis_probs(const Vec3& lengths) {
  const double n = lengths.norm();
  if (!(n > 0.0)) throw std::invalid_argument("softmax_axis_probs: all edges have zero length");
  const std::array<double, 3> e = {std::exp(lengths.x / n), std::exp(lengths.y / n), std::exp(lengths.z / n)};
  const double total = e[0] + e[1] + e[2];
  return {e[0] / total, e[1] / total, e[2] / total};
}

int argmax_axis(const Vec3& lengths) {
  int best = 0;
  for (int i = 1; i < 3; ++i) {
    if (lengths[i] > lengths[best]) best = i;
  }
  return best;
}

std::pair<Region, Region> divide(const Region& region, DivisionPolicy policy, Rng& axis_rng) {
  const Vec3 len = region.edge_lengths();
  if (!(len.x > 0.0 || len.y > 0.0 || len.z > 0.0)) {
    throw std::invalid_argument("divide: region has no positive-length axis");
  }

  int axis = -1;
  if (policy == DivisionPolicy::kArgmax) {
    axis = argmax_axis(len);
  } else {
    const std::array<double, 3> probs = softmax_axis_probs(len);
    std::array<double, 3> candidate = probs;
    for (int i = 0; i < 3; ++i) {
      if (!(len[i] > 0.0)) candidate[i] = 0.0;  // degenerate axes are never chosen
    }
    axis = axis_rng.sample(candidate);
  }

  const double mid = region.lo[axis] + 0.5 * (region.hi[axis] - region.lo[axis]);
  Region lower = region;
  Region upper = region;
  lower.hi[axis] = mid;
  upper.lo[axis] = mid;
  return {lower, upper};
}

std::vector<Vec3> fibonacci_directions(int n_dir) {
  if (n_dir < 2) throw std::invalid_argument("fibonacci_directions: n_dir must be >= 2");
  std::vector<Vec3> dirs;
  dirs.reserve(static_cast<std::size_t>(n_dir));
  const double turn = (1.0 + std::sqrt(5.0)) * std::numbers::pi;
  for (int k = 0; k < n_dir; ++k) {
    const double y = 1.0 - (2.0 * k) / static_cast<double>(n_dir - 1);
    const double r_sq = 1.0 - y * y;
    const double r = r_sq > 0.0 ? std::sqrt(r_sq) : 0.0;
    const double theta = turn * static_cast<double>(k);
    dirs.push_back({r * std::cos(theta), y, r * std::sin(theta)});
  }
  return dirs;
}

std::vector<Vec3> camera_directions(int n_dir) {
  if (n_dir < 1) throw std::invalid_argument("camera_directions: n_dir must be >= 1");
  if (n_dir == 1) return {Vec3{0.0, 1.0, 0.0}};
  return fibonacci_directions(n_dir);
}

}  // namespace viewscout
