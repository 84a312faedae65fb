#include "viewscout/rng.hpp"

#include <stdexcept>

namespace viewscout {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

int Rng::sample(std::span<const double> weights) {
  if (weights.empty()) throw std::invalid_argument("Rng::sample: empty weight list");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("Rng::sample: negative weight");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("Rng::sample: weights sum to zero");
  const double u = next_double() * total;
  double acc = 0.0;
  int last_positive = 0;
  for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = i;
    acc += weights[i];
    if (u < acc) return i;
  }
  return last_positive;  // rounding pushed u to the very top of the CDF
}

std::uint64_t Rng::derive(std::uint64_t root_seed, std::uint64_t stream_tag) {
  return splitmix64(root_seed ^ splitmix64(stream_tag));
}

}  // namespace viewscout
