#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace viewscout {

// Shortest decimal that round-trips back to the same double, so identical
// inputs always serialize to identical bytes.
std::string format_double(double value);

// One data row of the long-format run log.
struct LongRow {
  std::string scene;
  std::string variant;
  std::uint64_t seed = 0;
  int iteration = 0;
  double reward = 0.0;
  double cum_max = 0.0;
  double cum_mean = 0.0;
};

// One aggregate row of the summary.  status is "ok" for clean runs or the
// abort reason; aggregate rows over multiple seeds report "ok" only when
// every contributing run finished.
struct SummaryRow {
  std::string scene;
  std::string variant;
  double final_max_mean = 0.0;
  double final_max_std = 0.0;
  double final_mean_mean = 0.0;
  double final_mean_std = 0.0;
  std::string status = "ok";
};

std::string long_csv_text(const std::vector<LongRow>& rows);
std::string summary_csv_text(const std::vector<SummaryRow>& rows);

void write_long_csv(const std::vector<LongRow>& rows, const std::filesystem::path& path);
void write_summary_csv(const std::vector<SummaryRow>& rows, const std::filesystem::path& path);

// Parses text produced by long_csv_text.  Throws ConfigError on a malformed
// header or row.
std::vector<LongRow> parse_long_csv(const std::string& text);

}  // namespace viewscout
