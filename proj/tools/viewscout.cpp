#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "viewscout/bench.hpp"
#include "viewscout/csv.hpp"
#include "viewscout/errors.hpp"
#include "viewscout/hoo.hpp"
#include "viewscout/remote_scorer.hpp"
#include "viewscout/scene_io.hpp"
#include "viewscout/score_server.hpp"
#include "viewscout/scorers.hpp"

namespace {

using namespace viewscout;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

enum class LogLevel { kQuiet = 0, kInfo = 1, kDebug = 2 };

LogLevel log_level() {
  const char* raw = std::getenv("VIEWSCOUT_LOG");
  if (raw == nullptr) return LogLevel::kInfo;
  const std::string value = raw;
  if (value == "quiet") return LogLevel::kQuiet;
  if (value == "debug") return LogLevel::kDebug;
  return LogLevel::kInfo;
}

void log_info(const std::string& message) {
  if (log_level() >= LogLevel::kInfo) std::cerr << message << "\n";
}

void log_debug(const std::string& message) {
  if (log_level() >= LogLevel::kDebug) std::cerr << message << "\n";
}

volatile std::sig_atomic_t g_interrupted = 0;

void on_signal(int) { g_interrupted = 1; }

struct ExploreOptions {
  std::string scene_path;
  std::string remote;
  std::int64_t iters = 500;
  double c = 0.2;
  double rho = 0.5;
  double v1 = 0.5;
  int ndir = 15;
  std::string policy = "softmax";
  std::string variant = "truncated";
  std::string depth_limit = "inf";
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  std::string format = "csv";
};

std::pair<std::string, std::uint16_t> parse_host_port(const std::string& spec) {
  const std::size_t colon = spec.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size()) {
    throw ConfigError("--remote expects host:port, got \"" + spec + "\"");
  }
  const std::string host = spec.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(spec.substr(colon + 1));
  } catch (const std::exception&) {
    throw ConfigError("--remote port in \"" + spec + "\" is not a number");
  }
  if (port < 1 || port > 65535) {
    throw ConfigError("--remote port must lie in [1, 65535]");
  }
  return {host, static_cast<std::uint16_t>(port)};
}

HooParams params_from_options(const ExploreOptions& options) {
  HooParams params;
  params.c = options.c;
  params.rho = options.rho;
  params.nu1 = options.v1;
  params.horizon = options.iters;
  params.n_dir = options.ndir;
  params.policy = options.policy == "argmax" ? DivisionPolicy::kArgmax : DivisionPolicy::kSoftmax;
  params.variant = options.variant == "vanilla" ? HooVariant::kVanilla : HooVariant::kTruncated;
  params.depth_limit = options.depth_limit == "formula" ? DepthLimitMode::kFormula : DepthLimitMode::kInfinite;
  params.seed = options.seed;
  params.validate();
  return params;
}

std::string vec3_text(const Vec3& v) {
  return format_double(v.x) + " " + format_double(v.y) + " " + format_double(v.z);
}

nlohmann::json vec3_json(const Vec3& v) { return nlohmann::json::array({v.x, v.y, v.z}); }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("failed while writing " + path.string());
}

nlohmann::json params_json(const HooParams& params, const std::string& scene_name) {
  nlohmann::json j;
  j["scene"] = scene_name;
  j["c"] = params.c;
  j["rho"] = params.rho;
  j["nu1"] = params.nu1;
  j["horizon"] = params.horizon;
  j["n_dir"] = params.n_dir;
  j["fov_degrees"] = params.fov_degrees;
  j["policy"] = params.policy == DivisionPolicy::kArgmax ? "argmax" : "softmax";
  j["variant"] = params.variant == HooVariant::kVanilla ? "vanilla" : "truncated";
  j["depth_limit"] = params.depth_limit == DepthLimitMode::kFormula ? "formula" : "inf";
  j["seed"] = params.seed;
  return j;
}

int run_explore(const ExploreOptions& options) {
  const SyntheticScene scene = load_scene(options.scene_path);
  const std::string scene_name = std::filesystem::path(options.scene_path).stem().string();
  const HooParams params = params_from_options(options);

  std::unique_ptr<Scorer> scorer;
  if (options.remote.empty()) {
    scorer = std::make_unique<SyntheticScorer>(scene);
    log_debug("scoring locally");
  } else {
    const auto [host, port] = parse_host_port(options.remote);
    scorer = std::make_unique<RemoteScorer>(host, port);
    log_debug("scoring via " + host + ":" + std::to_string(port));
  }

  log_info("exploring " + scene_name + " for " + std::to_string(params.horizon) + " iterations");
  const ExplorationLog log = run(params, *scorer, scene.bounds);

  const std::filesystem::path out_dir = options.out_dir;
  std::filesystem::create_directories(out_dir);

  std::filesystem::path log_path;
  if (options.format == "json") {
    nlohmann::json root;
    root["params"] = params_json(params, scene_name);
    root["complete"] = log.complete;
    root["error"] = log.error;
    root["records"] = nlohmann::json::array();
    for (const IterationRecord& record : log.records) {
      nlohmann::json entry;
      entry["iteration"] = record.iteration;
      entry["node"] = record.node.index_hex();
      entry["depth"] = record.node.depth();
      entry["reward"] = record.reward;
      entry["cum_max"] = record.best_so_far;
      entry["cum_mean"] = record.mean_so_far;
      entry["position"] = vec3_json(record.position);
      entry["best_direction"] = record.best_direction;
      root["records"].push_back(std::move(entry));
    }
    log_path = out_dir / "explore_log.json";
    write_text_file(log_path, root.dump(2) + "\n");
  } else {
    std::vector<LongRow> rows;
    rows.reserve(log.records.size());
    for (const IterationRecord& record : log.records) {
      LongRow row;
      row.scene = scene_name;
      row.variant = "hoo";
      row.seed = params.seed;
      row.iteration = static_cast<int>(record.iteration);
      row.reward = record.reward;
      row.cum_max = record.best_so_far;
      row.cum_mean = record.mean_so_far;
      rows.push_back(std::move(row));
    }
    log_path = out_dir / "explore_log.csv";
    write_long_csv(rows, log_path);
  }

  if (log.records.empty()) {
    std::cerr << "run produced no iterations: " << log.error << "\n";
    return kExitRuntime;
  }

  const IterationRecord* best = &log.records.front();
  for (const IterationRecord& record : log.records) {
    if (record.reward > best->reward) best = &record;
  }

  nlohmann::json best_spot;
  best_spot["best_score"] = best->reward;
  best_spot["best_position"] = vec3_json(best->position);
  best_spot["best_direction"] = best->best_direction;
  best_spot["iteration"] = best->iteration;
  const std::filesystem::path best_path = out_dir / "best_spot.json";
  write_text_file(best_path, best_spot.dump(2) + "\n");

  std::cout << "best_score: " << format_double(best->reward) << "\n";
  std::cout << "best_position: " << vec3_text(best->position) << "\n";
  std::cout << "best_direction: " << best->best_direction << "\n";
  std::cout << "iterations: " << log.records.size() << "\n";
  std::cout << "log: " << log_path.string() << "\n";
  std::cout << "best_spot: " << best_path.string() << "\n";

  if (!log.complete) {
    std::cerr << "run aborted: " << log.error << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int run_bench_command(const std::string& config_path, const std::string& out_override, bool ablation) {
  BenchConfig config = load_bench_config(config_path);
  if (ablation) config.variants = ablation_variants();
  if (!out_override.empty()) config.output_dir = out_override;

  log_info("running " + std::to_string(config.scene_paths.size()) + " scenes x " +
           std::to_string(config.variants.size()) + " variants x " + std::to_string(config.seeds.size()) +
           " seeds");
  const BenchResult result = run_bench(config);

  std::cout << "long_csv: " << result.long_csv_path.string() << "\n";
  std::cout << "summary_csv: " << result.summary_csv_path.string() << "\n";

  for (const SummaryRow& row : result.summary_rows) {
    if (row.status != "ok") {
      std::cerr << "aborted runs in " << row.scene << "/" << row.variant << ": " << row.status << "\n";
      return kExitRuntime;
    }
  }
  return kExitOk;
}

int run_serve(const std::string& scene_path, int port) {
  const SyntheticScene scene = load_scene(scene_path);
  ScoreServer server(std::make_shared<SyntheticScorer>(scene));
  server.start(static_cast<std::uint16_t>(port));

  std::cout << "listening on port " << server.port() << "\n" << std::flush;
  log_info("serving " + scene_path + "; interrupt to stop");

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  while (g_interrupted == 0 && server.running()) {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  server.stop();
  return kExitOk;
}

int run_oracle(const std::string& scene_path, int resolution, int ndir) {
  const SyntheticScene scene = load_scene(scene_path);
  const OracleResult result = grid_oracle(scene, resolution, ndir);
  std::cout << "best_score: " << format_double(result.best_score) << "\n";
  std::cout << "best_position: " << vec3_text(result.best_position) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"viewscout: tree-search viewpoint exploration over cuboid scenes"};
  app.require_subcommand(1);

  ExploreOptions explore;
  CLI::App* explore_cmd = app.add_subcommand("explore", "Run the tree explorer on a scene");
  explore_cmd->add_option("--scene", explore.scene_path, "Scene config JSON")->required();
  explore_cmd->add_option("--remote", explore.remote, "Score via a remote server, host:port");
  explore_cmd->add_option("--iters", explore.iters, "Iteration budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  explore_cmd->add_option("--c", explore.c, "Exploration weight")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  explore_cmd->add_option("--rho", explore.rho, "Per-level smoothness decay, in (0, 1)")
      ->capture_default_str();
  explore_cmd->add_option("--v1", explore.v1, "Smoothness scale")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  explore_cmd->add_option("--ndir", explore.ndir, "Directions per evaluation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  explore_cmd->add_option("--policy", explore.policy, "Division axis policy")
      ->check(CLI::IsMember({"softmax", "argmax"}))
      ->capture_default_str();
  explore_cmd->add_option("--variant", explore.variant, "Bound clock variant")
      ->check(CLI::IsMember({"truncated", "vanilla"}))
      ->capture_default_str();
  explore_cmd->add_option("--depth-limit", explore.depth_limit, "Tree depth cap")
      ->check(CLI::IsMember({"inf", "formula"}))
      ->capture_default_str();
  explore_cmd->add_option("--seed", explore.seed, "Random seed")->capture_default_str();
  explore_cmd->add_option("--out", explore.out_dir, "Output directory")->capture_default_str();
  explore_cmd->add_option("--format", explore.format, "Iteration log format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  std::string bench_config;
  std::string bench_out;
  bool bench_ablation = false;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a benchmark config");
  bench_cmd->add_option("--config", bench_config, "Bench config JSON")->required();
  bench_cmd->add_option("--out", bench_out, "Output directory (overrides the config)");
  bench_cmd->add_flag("--ablation", bench_ablation, "Swap in the standard ablation variant grid");

  std::string serve_scene;
  int serve_port = 0;
  CLI::App* serve_cmd = app.add_subcommand("serve", "Serve a scene's scorer over TCP");
  serve_cmd->add_option("--scene", serve_scene, "Scene config JSON")->required();
  serve_cmd->add_option("--port", serve_port, "Port to bind; 0 picks a free one")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();

  std::string oracle_scene;
  int oracle_resolution = 64;
  int oracle_ndir = 15;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Exhaustive grid sweep of a scene");
  oracle_cmd->add_option("--scene", oracle_scene, "Scene config JSON")->required();
  oracle_cmd->add_option("--resolution", oracle_resolution, "Cells per axis")
      ->check(CLI::Range(2, 4096))
      ->capture_default_str();
  oracle_cmd->add_option("--ndir", oracle_ndir, "Directions per evaluation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::CallForAllHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitConfig;
  }

  try {
    if (explore_cmd->parsed()) return run_explore(explore);
    if (bench_cmd->parsed()) return run_bench_command(bench_config, bench_out, bench_ablation);
    if (serve_cmd->parsed()) return run_serve(serve_scene, serve_port);
    if (oracle_cmd->parsed()) return run_oracle(oracle_scene, oracle_resolution, oracle_ndir);
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
