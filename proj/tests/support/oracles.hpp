#pragma once

#include <array>

// Reference values computed independently with 40-digit arithmetic and frozen
// here; the library must land on them to double precision.

namespace viewscout::testing {

// softmax_axis_probs({3, 4, 0}): |L| = 5, so exp(0.6), exp(0.8), exp(0).
inline constexpr std::array<double, 3> kSoftmaxProbs340 = {
    0.36098289073731508, 0.44090549839518786, 0.19811161086749707};

// softmax_axis_probs({2, 0, 0}): |L| = 2, so exp(1), exp(0), exp(0).
inline constexpr std::array<double, 3> kSoftmaxProbs200 = {
    0.57611688476582911, 0.21194155761708545, 0.21194155761708545};

// u_value with mean 0.5, c 0.2, horizon 500, T 10, nu1 0.5, rho 0.5, depth 3:
// 0.5 + 0.2 sqrt(2 ln 500 / 10) + 0.5 * 0.125.
inline constexpr double kUValueOracle = 0.78547278934295443;

// fibonacci_directions(15), entries 1 and 7.
inline constexpr std::array<double, 3> kFib15Entry1 = {
    -0.37980304269181959, 0.85714285714285714, -0.34793069886259743};
inline constexpr std::array<double, 3> kFib15Entry7 = {
    -0.46090702471336875, 0.0, 0.88744842924525484};

// Single hotspot, amplitude 0.8, sigma 1, camera at distance 1 from its
// center, omnidirectional: 0.8 exp(-1/2).
inline constexpr double kSyntheticScoreOracle = 0.48522452777010674;

}  // namespace viewscout::testing
