#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "viewscout/csv.hpp"
#include "viewscout/hoo.hpp"
#include "viewscout/scorers.hpp"

namespace viewscout {

struct RandomExplorerParams {
  std::int64_t horizon = 500;
  int n_dir = 15;
  double fov_degrees = 60.0;
  std::uint64_t seed = 0;
  Region bounds;

  void validate() const;  // throws ConfigError
};

// Baseline: each iteration draws a position uniformly inside the bounds and
// scores it against the same direction fan the tree explorer uses.
// Deterministic per seed; a scorer failure aborts with a partial log.
ExplorationLog random_explore(const RandomExplorerParams& params, Scorer& scorer);

// One named explorer configuration. Random variants read horizon, n_dir and
// fov_degrees from the embedded params and ignore the rest; the per-run seed
// always overrides params.seed.
struct VariantSpec {
  enum class Kind { kHoo, kRandom };

  std::string name;
  Kind kind = Kind::kHoo;
  HooParams params;
};

struct BenchConfig {
  std::vector<std::filesystem::path> scene_paths;
  std::vector<VariantSpec> variants;
  std::vector<std::uint64_t> seeds;
  std::filesystem::path output_dir = ".";

  void validate() const;  // throws ConfigError
};

// Reads a bench config (JSON text):
//   {"scenes": [path, ...], "seeds": [u64, ...], "output_dir": path?,
//    "variants": [{"name": str, "kind": "hoo"|"random", ...params}]}
// Unknown fields are rejected. Relative scene and output paths resolve
// against the config file's directory.
BenchConfig load_bench_config(const std::filesystem::path& path);

struct BenchResult {
  std::vector<LongRow> long_rows;
  std::vector<SummaryRow> summary_rows;
  std::filesystem::path long_csv_path;
  std::filesystem::path summary_csv_path;
};

using ScorerFactory = std::function<std::unique_ptr<Scorer>(const SyntheticScene&)>;

// Runs every (scene, variant, seed) combination and writes bench_long.csv
// and bench_summary.csv under config.output_dir. Rows are sorted by
// (scene, variant, seed, iteration), so identical configs produce identical
// bytes. A run abort lands in the summary status column while the remaining
// runs continue. Summary rows aggregate finished runs per (scene, variant)
// with population std over seeds, plus one ALL row per variant across the
// whole suite.
BenchResult run_bench(const BenchConfig& config);
BenchResult run_bench(const BenchConfig& config, const ScorerFactory& make_scorer);

// The ablation grid: division policy (softmax vs argmax), depth limit
// (unlimited vs formula), horizon x smoothness sweep
// {500, 1000} x {0.5, 1, 2, 4, 8}, and fan size {15, 30}. 16 variants.
std::vector<VariantSpec> ablation_variants();

BenchResult ablation_suite(const std::vector<std::filesystem::path>& scene_paths,
                           const std::vector<std::uint64_t>& seeds,
                           const std::filesystem::path& output_dir);

// Ten seeded synthetic scenes with 1 to 5 hotspots each and varied falloff
// scales and lobe sharpness, sized so a 64^3 grid sweep stays fast.
std::vector<SyntheticScene> generate_standard_suite(std::uint64_t seed);

// Writes the suite as suite_00.json .. suite_09.json under dir and returns
// the paths.
std::vector<std::filesystem::path> write_standard_suite(std::uint64_t seed,
                                                        const std::filesystem::path& dir);

inline constexpr std::uint64_t kStandardSuiteSeed = 20240517;

}  // namespace viewscout
