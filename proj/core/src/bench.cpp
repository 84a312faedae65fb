#include "viewscout/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "viewscout/errors.hpp"
#include "viewscout/scene_io.hpp"

namespace viewscout {

void RandomExplorerParams::validate() const {
  if (horizon < 1) throw ConfigError("horizon must be at least 1");
  if (n_dir < 1) throw ConfigError("n_dir must be at least 1");
  if (!(fov_degrees > 0.0 && fov_degrees < 180.0)) throw ConfigError("fov must lie in (0, 180)");
  if (!bounds.well_formed()) throw ConfigError("bounds are not well formed");
}

ExplorationLog random_explore(const RandomExplorerParams& params, Scorer& scorer) {
  params.validate();
  const std::vector<Vec3> directions = camera_directions(params.n_dir);
  Rng position_rng(Rng::derive(params.seed, kPositionStream));

  ExplorationLog log;
  double best = 0.0;
  double sum = 0.0;
  for (std::int64_t i = 1; i <= params.horizon; ++i) {
    Vec3 position;
    position.x = position_rng.uniform(params.bounds.lo.x, params.bounds.hi.x);
    position.y = position_rng.uniform(params.bounds.lo.y, params.bounds.hi.y);
    position.z = position_rng.uniform(params.bounds.lo.z, params.bounds.hi.z);

    RegionReward outcome;
    try {
      outcome = region_reward(position, directions, scorer, params.fov_degrees);
    } catch (const ScorerError& err) {
      log.complete = false;
      log.error = err.what();
      return log;
    }

    best = std::max(best, outcome.reward);
    sum += outcome.reward;

    IterationRecord record;
    record.iteration = i;
    record.reward = outcome.reward;
    record.best_so_far = best;
    record.mean_so_far = sum / static_cast<double>(i);
    record.position = position;
    record.best_direction = outcome.best_direction;
    log.records.push_back(std::move(record));
  }
  return log;
}

void BenchConfig::validate() const {
  if (scene_paths.empty()) throw ConfigError("bench config needs at least one scene");
  if (seeds.empty()) throw ConfigError("bench config needs at least one seed");
  if (variants.empty()) throw ConfigError("bench config needs at least one variant");

  std::set<std::string> names;
  for (const VariantSpec& variant : variants) {
    if (variant.name.empty()) throw ConfigError("variant names must be non-empty");
    if (variant.name == "ALL") throw ConfigError("variant name ALL is reserved");
    if (variant.name.find(',') != std::string::npos) {
      throw ConfigError("variant name \"" + variant.name + "\" cannot contain commas");
    }
    if (!names.insert(variant.name).second) {
      throw ConfigError("duplicate variant name \"" + variant.name + "\"");
    }
    variant.params.validate();
  }

  std::set<std::string> stems;
  for (const std::filesystem::path& path : scene_paths) {
    const std::string stem = path.stem().string();
    if (stem == "ALL") throw ConfigError("scene name ALL is reserved");
    if (stem.find(',') != std::string::npos) {
      throw ConfigError("scene name \"" + stem + "\" cannot contain commas");
    }
    if (!stems.insert(stem).second) {
      throw ConfigError("two scenes share the name \"" + stem + "\"");
    }
  }
}

namespace {

using nlohmann::json;

void reject_unknown_fields(const json& object, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    (void)value;
    if (!allowed.contains(key)) throw ConfigError("unknown field \"" + key + "\" in " + where);
  }
}

double number_or(const json& object, const std::string& key, double fallback, const std::string& where) {
  if (!object.contains(key)) return fallback;
  if (!object[key].is_number()) throw ConfigError(where + "." + key + " must be a number");
  return object[key].get<double>();
}

std::int64_t integer_or(const json& object, const std::string& key, std::int64_t fallback, const std::string& where) {
  if (!object.contains(key)) return fallback;
  if (!object[key].is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  return object[key].get<std::int64_t>();
}

VariantSpec parse_variant(const json& entry, const std::string& where) {
  if (!entry.is_object()) throw ConfigError(where + " must be an object");
  if (!entry.contains("name") || !entry["name"].is_string()) {
    throw ConfigError(where + " needs a string \"name\"");
  }
  if (!entry.contains("kind") || !entry["kind"].is_string()) {
    throw ConfigError(where + " needs a \"kind\" of \"hoo\" or \"random\"");
  }

  VariantSpec variant;
  variant.name = entry["name"].get<std::string>();
  const std::string kind = entry["kind"].get<std::string>();

  if (kind == "random") {
    variant.kind = VariantSpec::Kind::kRandom;
    reject_unknown_fields(entry, {"name", "kind", "horizon", "n_dir", "fov_degrees"}, where);
  } else if (kind == "hoo") {
    variant.kind = VariantSpec::Kind::kHoo;
    reject_unknown_fields(entry,
                          {"name", "kind", "horizon", "n_dir", "fov_degrees", "c", "nu1", "rho", "policy",
                           "variant", "depth_limit"},
                          where);
    variant.params.c = number_or(entry, "c", variant.params.c, where);
    variant.params.nu1 = number_or(entry, "nu1", variant.params.nu1, where);
    variant.params.rho = number_or(entry, "rho", variant.params.rho, where);
    if (entry.contains("policy")) {
      const std::string policy = entry["policy"].is_string() ? entry["policy"].get<std::string>() : "";
      if (policy == "softmax") {
        variant.params.policy = DivisionPolicy::kSoftmax;
      } else if (policy == "argmax") {
        variant.params.policy = DivisionPolicy::kArgmax;
      } else {
        throw ConfigError(where + ".policy must be \"softmax\" or \"argmax\"");
      }
    }
    if (entry.contains("variant")) {
      const std::string name = entry["variant"].is_string() ? entry["variant"].get<std::string>() : "";
      if (name == "truncated") {
        variant.params.variant = HooVariant::kTruncated;
      } else if (name == "vanilla") {
        variant.params.variant = HooVariant::kVanilla;
      } else {
        throw ConfigError(where + ".variant must be \"truncated\" or \"vanilla\"");
      }
    }
    if (entry.contains("depth_limit")) {
      const std::string mode = entry["depth_limit"].is_string() ? entry["depth_limit"].get<std::string>() : "";
      if (mode == "infinite") {
        variant.params.depth_limit = DepthLimitMode::kInfinite;
      } else if (mode == "formula") {
        variant.params.depth_limit = DepthLimitMode::kFormula;
      } else {
        throw ConfigError(where + ".depth_limit must be \"infinite\" or \"formula\"");
      }
    }
  } else {
    throw ConfigError(where + ".kind must be \"hoo\" or \"random\"");
  }

  variant.params.horizon = integer_or(entry, "horizon", variant.params.horizon, where);
  const std::int64_t n_dir = integer_or(entry, "n_dir", variant.params.n_dir, where);
  variant.params.n_dir = static_cast<int>(n_dir);
  variant.params.fov_degrees = number_or(entry, "fov_degrees", variant.params.fov_degrees, where);
  return variant;
}

std::string sanitize_status(std::string text) {
  for (char& ch : text) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  }
  return text;
}

struct Aggregate {
  std::vector<double> final_max;
  std::vector<double> final_mean;
  int total_runs = 0;
  int aborted_runs = 0;
  std::string first_error;
};

double mean_of(const std::vector<double>& values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double population_std(const std::vector<double>& values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double mu = mean_of(values);
  double sum_sq = 0.0;
  for (double v : values) sum_sq += (v - mu) * (v - mu);
  return std::sqrt(sum_sq / static_cast<double>(values.size()));
}

SummaryRow summarize(const std::string& scene, const std::string& variant, const Aggregate& agg) {
  SummaryRow row;
  row.scene = scene;
  row.variant = variant;
  row.final_max_mean = mean_of(agg.final_max);
  row.final_max_std = population_std(agg.final_max);
  row.final_mean_mean = mean_of(agg.final_mean);
  row.final_mean_std = population_std(agg.final_mean);
  if (agg.aborted_runs == 0) {
    row.status = "ok";
  } else {
    row.status = "aborted:" + std::to_string(agg.aborted_runs) + "/" + std::to_string(agg.total_runs) +
                 ":" + agg.first_error;
  }
  return row;
}

}  // namespace

BenchConfig load_bench_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open bench config " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();

  json root;
  try {
    root = json::parse(buffer.str());
  } catch (const json::parse_error& err) {
    throw ConfigError(path.string() + " is not valid JSON: " + err.what());
  }
  if (!root.is_object()) throw ConfigError(path.string() + " must hold a JSON object");
  reject_unknown_fields(root, {"scenes", "seeds", "output_dir", "variants"}, "bench config");

  const std::filesystem::path base = path.has_parent_path() ? path.parent_path() : ".";

  BenchConfig config;
  if (!root.contains("scenes") || !root["scenes"].is_array()) {
    throw ConfigError("bench config needs a \"scenes\" array");
  }
  for (const json& entry : root["scenes"]) {
    if (!entry.is_string()) throw ConfigError("scene entries must be path strings");
    std::filesystem::path scene = entry.get<std::string>();
    if (scene.is_relative()) scene = base / scene;
    config.scene_paths.push_back(scene);
  }

  if (!root.contains("seeds") || !root["seeds"].is_array()) {
    throw ConfigError("bench config needs a \"seeds\" array");
  }
  for (const json& entry : root["seeds"]) {
    if (!entry.is_number_integer() || entry.get<std::int64_t>() < 0) {
      throw ConfigError("seeds must be non-negative integers");
    }
    config.seeds.push_back(entry.get<std::uint64_t>());
  }

  if (root.contains("output_dir")) {
    if (!root["output_dir"].is_string()) throw ConfigError("output_dir must be a path string");
    std::filesystem::path out = root["output_dir"].get<std::string>();
    if (out.is_relative()) out = base / out;
    config.output_dir = out;
  }

  if (!root.contains("variants") || !root["variants"].is_array()) {
    throw ConfigError("bench config needs a \"variants\" array");
  }
  for (std::size_t i = 0; i < root["variants"].size(); ++i) {
    config.variants.push_back(parse_variant(root["variants"][i], "variants[" + std::to_string(i) + "]"));
  }

  config.validate();
  return config;
}

BenchResult run_bench(const BenchConfig& config) {
  return run_bench(config, [](const SyntheticScene& scene) -> std::unique_ptr<Scorer> {
    return std::make_unique<SyntheticScorer>(scene);
  });
}

BenchResult run_bench(const BenchConfig& config, const ScorerFactory& make_scorer) {
  config.validate();

  std::vector<std::pair<std::string, SyntheticScene>> scenes;
  scenes.reserve(config.scene_paths.size());
  for (const std::filesystem::path& path : config.scene_paths) {
    scenes.emplace_back(path.stem().string(), load_scene(path));
  }

  BenchResult result;
  std::map<std::pair<std::string, std::string>, Aggregate> groups;
  std::map<std::string, Aggregate> overall;

  for (const auto& [scene_name, scene] : scenes) {
    for (const VariantSpec& variant : config.variants) {
      for (std::uint64_t seed : config.seeds) {
        const std::unique_ptr<Scorer> scorer = make_scorer(scene);

        ExplorationLog log;
        if (variant.kind == VariantSpec::Kind::kRandom) {
          RandomExplorerParams params;
          params.horizon = variant.params.horizon;
          params.n_dir = variant.params.n_dir;
          params.fov_degrees = variant.params.fov_degrees;
          params.seed = seed;
          params.bounds = scene.bounds;
          log = random_explore(params, *scorer);
        } else {
          HooParams params = variant.params;
          params.seed = seed;
          log = run(params, *scorer, scene.bounds);
        }

        for (const IterationRecord& record : log.records) {
          LongRow row;
          row.scene = scene_name;
          row.variant = variant.name;
          row.seed = seed;
          row.iteration = static_cast<int>(record.iteration);
          row.reward = record.reward;
          row.cum_max = record.best_so_far;
          row.cum_mean = record.mean_so_far;
          result.long_rows.push_back(std::move(row));
        }

        Aggregate& group = groups[{scene_name, variant.name}];
        Aggregate& all = overall[variant.name];
        group.total_runs += 1;
        all.total_runs += 1;
        if (log.complete && !log.records.empty()) {
          const IterationRecord& last = log.records.back();
          group.final_max.push_back(last.best_so_far);
          group.final_mean.push_back(last.mean_so_far);
          all.final_max.push_back(last.best_so_far);
          all.final_mean.push_back(last.mean_so_far);
        } else {
          group.aborted_runs += 1;
          all.aborted_runs += 1;
          const std::string reason = sanitize_status(log.error);
          if (group.first_error.empty()) group.first_error = reason;
          if (all.first_error.empty()) all.first_error = reason;
        }
      }
    }
  }

  std::sort(result.long_rows.begin(), result.long_rows.end(), [](const LongRow& a, const LongRow& b) {
    return std::tie(a.scene, a.variant, a.seed, a.iteration) < std::tie(b.scene, b.variant, b.seed, b.iteration);
  });

  for (const auto& [key, agg] : groups) {
    result.summary_rows.push_back(summarize(key.first, key.second, agg));
  }
  for (const auto& [variant, agg] : overall) {
    result.summary_rows.push_back(summarize("ALL", variant, agg));
  }

  std::filesystem::create_directories(config.output_dir);
  result.long_csv_path = config.output_dir / "bench_long.csv";
  result.summary_csv_path = config.output_dir / "bench_summary.csv";
  write_long_csv(result.long_rows, result.long_csv_path);
  write_summary_csv(result.summary_rows, result.summary_csv_path);
  return result;
}

std::vector<VariantSpec> ablation_variants() {
  std::vector<VariantSpec> variants;

  const auto push_hoo = [&variants](const std::string& name) -> HooParams& {
    VariantSpec spec;
    spec.name = name;
    spec.kind = VariantSpec::Kind::kHoo;
    variants.push_back(std::move(spec));
    return variants.back().params;
  };

  push_hoo("policy-softmax");
  push_hoo("policy-argmax").policy = DivisionPolicy::kArgmax;

  push_hoo("depth-unlimited");
  push_hoo("depth-capped").depth_limit = DepthLimitMode::kFormula;

  for (std::int64_t horizon : {500, 1000}) {
    for (double nu1 : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      HooParams& params = push_hoo("n" + std::to_string(horizon) + "-nu" + format_double(nu1));
      params.horizon = horizon;
      params.nu1 = nu1;
    }
  }

  push_hoo("ndir-15").n_dir = 15;
  push_hoo("ndir-30").n_dir = 30;

  return variants;
}

BenchResult ablation_suite(const std::vector<std::filesystem::path>& scene_paths,
                           const std::vector<std::uint64_t>& seeds,
                           const std::filesystem::path& output_dir) {
  BenchConfig config;
  config.scene_paths = scene_paths;
  config.seeds = seeds;
  config.variants = ablation_variants();
  config.output_dir = output_dir;
  return run_bench(config);
}

std::vector<SyntheticScene> generate_standard_suite(std::uint64_t seed) {
  std::vector<SyntheticScene> scenes;
  scenes.reserve(10);
  for (int s = 0; s < 10; ++s) {
    Rng rng(Rng::derive(seed, 0x5ce00u + static_cast<std::uint64_t>(s)));

    SyntheticScene scene;
    const double half_x = rng.uniform(4.0, 6.0);
    const double half_y = rng.uniform(4.0, 6.0);
    const double half_z = rng.uniform(4.0, 6.0);
    scene.bounds.lo = {-half_x, -half_y, -half_z};
    scene.bounds.hi = {half_x, half_y, half_z};

    // Hotspots stay away from the walls and keep sigma wide enough that no
    // in-box score underflows a float32: remote transport must preserve the
    // exact comparison structure the local run sees.
    const int hotspot_count = 1 + (s % 5);
    for (int h = 0; h < hotspot_count; ++h) {
      Hotspot hotspot;
      hotspot.center.x = rng.uniform(-0.55 * half_x, 0.55 * half_x);
      hotspot.center.y = rng.uniform(-0.55 * half_y, 0.55 * half_y);
      hotspot.center.z = rng.uniform(-0.55 * half_z, 0.55 * half_z);
      hotspot.sigma = rng.uniform(1.3, 2.4);
      hotspot.amplitude = rng.uniform(0.35, 1.0);
      hotspot.kappa = rng.next_double() < 0.5 ? 0.0 : rng.uniform(0.5, 4.0);
      if (hotspot.kappa > 0.0 && s % 3 == 2 && h == 0) {
        Vec3 axis;
        axis.x = rng.uniform(-1.0, 1.0);
        axis.y = rng.uniform(-1.0, 1.0);
        axis.z = rng.uniform(-1.0, 1.0);
        if (axis.norm() > 1e-3) hotspot.preferred_axis = axis.normalized();
      }
      scene.hotspots.push_back(hotspot);
    }
    scene.validate();
    scenes.push_back(std::move(scene));
  }
  return scenes;
}

std::vector<std::filesystem::path> write_standard_suite(std::uint64_t seed,
                                                        const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::vector<SyntheticScene> scenes = generate_standard_suite(seed);
  std::vector<std::filesystem::path> paths;
  paths.reserve(scenes.size());
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    std::ostringstream name;
    name << "suite_" << (i < 10 ? "0" : "") << i << ".json";
    const std::filesystem::path path = dir / name.str();
    save_scene(scenes[i], path);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace viewscout
