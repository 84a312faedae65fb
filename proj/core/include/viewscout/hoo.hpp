#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "viewscout/geometry.hpp"
#include "viewscout/rng.hpp"
#include "viewscout/scorers.hpp"

namespace viewscout {

// Unvisited nodes carry a genuinely infinite optimistic bound; never a large
// finite stand-in, so comparisons and min/max behave exactly.
inline constexpr double kInfBound = std::numeric_limits<double>::infinity();

// Binary-tree coordinates (depth d, index i). Children of (d, i) are
// (d+1, 2i) and (d+1, 2i+1); the parent is (d-1, floor(i/2)). The index is
// stored as the turn sequence from the root (one bit per level, most
// significant first) because unlimited-depth runs outgrow 64-bit indices.
class NodeId {
 public:
  NodeId() = default;  // root (0, 0)

  NodeId child(int turn) const;  // turn 0 = lower half, 1 = upper half
  NodeId parent() const;         // requires depth >= 1
  std::uint32_t depth() const { return static_cast<std::uint32_t>(turns_.size()); }
  std::uint64_t index_u64() const;  // requires depth <= 63
  std::string index_hex() const;    // "0x0" for the root
  const std::vector<std::uint8_t>& turns() const { return turns_; }

  bool operator==(const NodeId&) const = default;

 private:
  std::vector<std::uint8_t> turns_;
};

struct NodeStats {
  std::int64_t visits = 0;    // T: evaluations in this node's subtree (plus its own)
  double mean_reward = 0.0;   // running mean of those rewards
  double u_value = kInfBound;
  double b_value = kInfBound;
};

enum class DepthLimitMode { kInfinite, kFormula };
enum class HooVariant { kTruncated, kVanilla };

struct HooParams {
  double c = 0.2;       // exploration weight
  double nu1 = 0.5;     // smoothness scale
  double rho = 0.5;     // per-level smoothness decay, in (0, 1)
  std::int64_t horizon = 500;  // planned number of iterations
  int n_dir = 15;
  double fov_degrees = 60.0;
  DivisionPolicy policy = DivisionPolicy::kSoftmax;
  HooVariant variant = HooVariant::kTruncated;
  DepthLimitMode depth_limit = DepthLimitMode::kInfinite;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
};

// ceil((ln N + ln nu1) / -ln rho), clamped below at zero.
// Requires horizon >= 1, nu1 > 0 and rho in (0, 1).
int depth_limit_formula(std::int64_t horizon, double nu1, double rho);

// Optimistic bound for a node at `depth`:
//   U = mean + c * sqrt(2 ln(clock) / T) + nu1 * rho^depth
// and +infinity while T == 0. The truncated variant passes the horizon as
// `clock`; the vanilla variant passes the current iteration. Requires
// clock >= 1.
double u_value(const NodeStats& stats, const HooParams& params, std::uint32_t depth, std::int64_t clock);

// Tightened bound: a node can beat neither its own U nor the better of its
// children's B-values.
inline double combine_b_value(double u, double b_left, double b_right) {
  return std::min(u, std::max(b_left, b_right));
}

struct IterationRecord {
  std::int64_t iteration = 0;  // 1-based
  NodeId node;                 // node evaluated this iteration
  double reward = 0.0;
  double best_so_far = 0.0;
  double mean_so_far = 0.0;
  Vec3 position;             // camera position used for the evaluation
  int best_direction = 0;    // index into the direction fan
};

struct ExplorationLog {
  std::vector<IterationRecord> records;
  bool complete = true;
  std::string error;  // populated when complete == false
};

// Incrementally grown binary partition tree over a cuboid search space.
//
// The loop per iteration: descend by B-value from the root until leaving the
// member set (or hitting the depth cap), admit that node as a member and halve
// its region, score its center against the direction fan, then push the
// reward back up the path. Member nodes below the cap always carry two
// pre-created children holding infinite bounds, so fresh territory wins the
// descent until it has been sampled.
class HooTree {
 public:
  struct Node {
    NodeId id;
    NodeStats stats;
    Region region;
    std::int32_t parent = -1;
    std::int32_t left = -1;   // -1 until children are created
    std::int32_t right = -1;
    bool member = false;
    double own_reward_sum = 0.0;  // rewards from iterations that evaluated this node
    std::int64_t own_evals = 0;
  };

  struct Selection {
    std::vector<std::int32_t> path;  // root first, evaluated node last
    std::int32_t leaf = 0;
  };

  HooTree(const HooParams& params, const Region& space);

  // One full select / expand / score / backup cycle.
  IterationRecord step(Scorer& scorer);

  // The pieces of step(), usable separately.
  Selection select_path();
  void expand(std::int32_t leaf);  // admits the node, divides its region below the cap
  void backup(std::span<const std::int32_t> path, double reward);

  const Node& node(std::int32_t index) const { return nodes_[static_cast<std::size_t>(index)]; }
  std::int32_t node_count() const { return static_cast<std::int32_t>(nodes_.size()); }
  std::int32_t root() const { return 0; }
  std::int64_t member_count() const { return member_count_; }
  std::int64_t iterations_done() const { return iteration_; }
  std::optional<int> depth_cap() const { return depth_cap_; }
  const HooParams& params() const { return params_; }
  const std::vector<Vec3>& directions() const { return directions_; }
  const ExplorationLog& log() const { return log_; }

  // Total count of node mutations (stat updates and creations) since
  // construction; the backup-cost measure for complexity checks.
  std::uint64_t mutated_node_total() const { return mutated_total_; }

 private:
  void create_children(std::int32_t parent_index);
  bool below_cap(std::int32_t index) const;
  void refresh_all_bounds(std::int64_t clock);  // vanilla variant: U depends on the iteration

  HooParams params_;
  std::optional<int> depth_cap_;
  Rng tie_rng_;
  Rng axis_rng_;
  std::vector<Vec3> directions_;
  std::vector<Node> nodes_;
  std::int64_t iteration_ = 0;
  std::int64_t member_count_ = 0;
  double best_so_far_ = 0.0;
  double reward_sum_ = 0.0;
  std::uint64_t mutated_total_ = 0;
  ExplorationLog log_;
};

// Runs params.horizon iterations over `space`. A scorer failure aborts the
// run and returns the partial log with complete == false; config problems
// throw before the first iteration.
ExplorationLog run(const HooParams& params, Scorer& scorer, const Region& space);

using IterationCallback = std::function<void(const HooTree&, const IterationRecord&)>;
ExplorationLog run(const HooParams& params, Scorer& scorer, const Region& space,
                   const IterationCallback& after_iteration);

}  // namespace viewscout
