#include "viewscout/hoo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "viewscout/errors.hpp"

namespace viewscout {

NodeId NodeId::child(int turn) const {
  if (turn != 0 && turn != 1) throw std::invalid_argument("NodeId::child: turn must be 0 or 1");
  NodeId c = *this;
  c.turns_.push_back(static_cast<std::uint8_t>(turn));
  return c;
}

NodeId NodeId::parent() const {
  if (turns_.empty()) throw std::logic_error("NodeId::parent: root has no parent");
  NodeId p = *this;
  p.turns_.pop_back();
  return p;
}

std::uint64_t NodeId::index_u64() const {
  if (turns_.size() > 63) throw std::logic_error("NodeId::index_u64: index exceeds 64 bits");
  std::uint64_t index = 0;
  for (std::uint8_t turn : turns_) index = (index << 1) | turn;
  return index;
}

std::string NodeId::index_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string reversed;
  int nibble = 0;
  int bit = 0;
  for (auto it = turns_.rbegin(); it != turns_.rend(); ++it) {
    nibble |= *it << bit;
    if (++bit == 4) {
      reversed.push_back(kDigits[nibble]);
      nibble = 0;
      bit = 0;
    }
  }
  if (bit != 0) reversed.push_back(kDigits[nibble]);
  while (reversed.size() > 1 && reversed.back() == '0') reversed.pop_back();
  if (reversed.empty()) reversed.push_back('0');
  return "0x" + std::string(reversed.rbegin(), reversed.rend());
}

void HooParams::validate() const {
  if (!(c >= 0.0) || !std::isfinite(c)) throw ConfigError("c must be finite and non-negative");
  if (!(nu1 > 0.0) || !std::isfinite(nu1)) throw ConfigError("nu1 must be finite and positive");
  if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("rho must be in (0, 1)");
  if (horizon < 1) throw ConfigError("iteration count must be >= 1");
  if (n_dir < 1) throw ConfigError("n_dir must be >= 1");
  if (!(fov_degrees > 0.0 && fov_degrees < 180.0)) throw ConfigError("fov must be in (0, 180) degrees");
}

int depth_limit_formula(std::int64_t horizon, double nu1, double rho) {
  if (horizon < 1) throw ConfigError("depth limit: horizon must be >= 1");
  if (!(nu1 > 0.0) || !std::isfinite(nu1)) throw ConfigError("depth limit: nu1 must be finite and positive");
  if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("depth limit: rho must be in (0, 1)");
  const double ratio = (std::log(static_cast<double>(horizon)) + std::log(nu1)) / -std::log(rho);
  const double d = std::ceil(ratio);
  return d < 0.0 ? 0 : static_cast<int>(d);
}

double u_value(const NodeStats& stats, const HooParams& params, std::uint32_t depth, std::int64_t clock) {
  if (clock < 1) throw std::invalid_argument("u_value: clock must be >= 1");
  if (stats.visits == 0) return kInfBound;
  return stats.mean_reward +
         params.c * std::sqrt(2.0 * std::log(static_cast<double>(clock)) / static_cast<double>(stats.visits)) +
         params.nu1 * std::pow(params.rho, static_cast<double>(depth));
}

HooTree::HooTree(const HooParams& params, const Region& space)
    : params_(params),
      tie_rng_(Rng::derive(params.seed, kTieBreakStream)),
      axis_rng_(Rng::derive(params.seed, kAxisSampleStream)) {
  params_.validate();
  if (!space.well_formed()) throw ConfigError("search space: min corner exceeds max corner");
  const Vec3 len = space.edge_lengths();
  if (!(len.x > 0.0 || len.y > 0.0 || len.z > 0.0)) {
    throw ConfigError("search space has zero length on every axis");
  }
  if (params_.depth_limit == DepthLimitMode::kFormula) {
    depth_cap_ = depth_limit_formula(params_.horizon, params_.nu1, params_.rho);
  }
  directions_ = camera_directions(params_.n_dir);

  Node root_node;
  root_node.region = space;
  root_node.member = true;
  nodes_.push_back(std::move(root_node));
  member_count_ = 1;
  mutated_total_ += 1;
  if (below_cap(0)) create_children(0);
}

bool HooTree::below_cap(std::int32_t index) const {
  return !depth_cap_ || nodes_[static_cast<std::size_t>(index)].id.depth() < static_cast<std::uint32_t>(*depth_cap_);
}

void HooTree::create_children(std::int32_t parent_index) {
  auto [lower, upper] = divide(nodes_[static_cast<std::size_t>(parent_index)].region, params_.policy, axis_rng_);
  const std::int32_t left_index = node_count();
  for (int turn = 0; turn < 2; ++turn) {
    Node child;
    child.id = nodes_[static_cast<std::size_t>(parent_index)].id.child(turn);
    child.region = turn == 0 ? lower : upper;
    child.parent = parent_index;
    nodes_.push_back(std::move(child));
  }
  nodes_[static_cast<std::size_t>(parent_index)].left = left_index;
  nodes_[static_cast<std::size_t>(parent_index)].right = left_index + 1;
  mutated_total_ += 2;
}

HooTree::Selection HooTree::select_path() {
  Selection sel;
  std::int32_t cur = 0;
  sel.path.push_back(cur);
  while (nodes_[static_cast<std::size_t>(cur)].member && below_cap(cur)) {
    const Node& n = nodes_[static_cast<std::size_t>(cur)];
    const double b_left = nodes_[static_cast<std::size_t>(n.left)].stats.b_value;
    const double b_right = nodes_[static_cast<std::size_t>(n.right)].stats.b_value;
    int turn;
    if (b_left > b_right) {
      turn = 0;
    } else if (b_right > b_left) {
      turn = 1;
    } else {
      turn = tie_rng_.next_bit();
    }
    cur = turn == 0 ? n.left : n.right;
    sel.path.push_back(cur);
  }
  sel.leaf = cur;
  return sel;
}

void HooTree::expand(std::int32_t leaf) {
  Node& n = nodes_[static_cast<std::size_t>(leaf)];
  if (n.member) throw std::logic_error("expand: node is already a member");
  n.member = true;
  member_count_ += 1;
  mutated_total_ += 1;
  if (below_cap(leaf)) create_children(leaf);
  // At the depth cap the node joins without children; later arrivals
  // re-evaluate it in place.
}

void HooTree::backup(std::span<const std::int32_t> path, double reward) {
  if (path.empty() || path.front() != 0) throw std::logic_error("backup: path must start at the root");
  const std::int64_t clock = params_.variant == HooVariant::kTruncated ? params_.horizon : iteration_;

  // Children before parents: B-values chain upward through min/max.
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    Node& n = nodes_[static_cast<std::size_t>(*it)];
    n.stats.visits += 1;
    if (*it != 0) {
      n.stats.mean_reward += (reward - n.stats.mean_reward) / static_cast<double>(n.stats.visits);
      n.stats.u_value = u_value(n.stats, params_, n.id.depth(), clock);
      n.stats.b_value = n.left >= 0 ? combine_b_value(n.stats.u_value, nodes_[static_cast<std::size_t>(n.left)].stats.b_value,
                                                      nodes_[static_cast<std::size_t>(n.right)].stats.b_value)
                                    : n.stats.u_value;
    }
  }

  if (params_.variant == HooVariant::kVanilla) {
    refresh_all_bounds(clock);
  } else {
    mutated_total_ += path.size();
  }
}

void HooTree::refresh_all_bounds(std::int64_t clock) {
  // The exploration bonus tracks the live iteration count, so every visited
  // node's bounds go stale each iteration. Nodes are stored parents-first;
  // sweeping in reverse updates children before their parents.
  std::uint64_t touched = 1;  // the root's visit count changed during backup
  for (std::int32_t i = node_count() - 1; i >= 1; --i) {
    Node& n = nodes_[static_cast<std::size_t>(i)];
    if (n.stats.visits == 0) continue;
    n.stats.u_value = u_value(n.stats, params_, n.id.depth(), clock);
    n.stats.b_value = n.left >= 0 ? combine_b_value(n.stats.u_value, nodes_[static_cast<std::size_t>(n.left)].stats.b_value,
                                                    nodes_[static_cast<std::size_t>(n.right)].stats.b_value)
                                  : n.stats.u_value;
    touched += 1;
  }
  mutated_total_ += touched;
}

IterationRecord HooTree::step(Scorer& scorer) {
  iteration_ += 1;
  Selection sel = select_path();
  if (!nodes_[static_cast<std::size_t>(sel.leaf)].member) expand(sel.leaf);

  const Vec3 position = nodes_[static_cast<std::size_t>(sel.leaf)].region.center();
  const RegionReward scored = region_reward(position, directions_, scorer, params_.fov_degrees);

  backup(sel.path, scored.reward);
  Node& leaf_node = nodes_[static_cast<std::size_t>(sel.leaf)];
  leaf_node.own_reward_sum += scored.reward;
  leaf_node.own_evals += 1;

  best_so_far_ = std::max(best_so_far_, scored.reward);
  reward_sum_ += scored.reward;
  IterationRecord record{iteration_,    leaf_node.id,      scored.reward,        best_so_far_,
                         reward_sum_ / static_cast<double>(iteration_), position, scored.best_direction};
  log_.records.push_back(record);
  return record;
}

ExplorationLog run(const HooParams& params, Scorer& scorer, const Region& space) {
  return run(params, scorer, space, IterationCallback{});
}

ExplorationLog run(const HooParams& params, Scorer& scorer, const Region& space,
                   const IterationCallback& after_iteration) {
  HooTree tree(params, space);
  for (std::int64_t n = 0; n < params.horizon; ++n) {
    try {
      const IterationRecord record = tree.step(scorer);
      if (after_iteration) after_iteration(tree, record);
    } catch (const ScorerError& e) {
      ExplorationLog partial = tree.log();
      partial.complete = false;
      partial.error = e.what();
      return partial;
    }
  }
  return tree.log();
}

}  // namespace viewscout
