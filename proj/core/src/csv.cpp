#include "viewscout/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "viewscout/errors.hpp"

namespace viewscout {

std::string format_double(double value) {
  char buffer[64];
  const std::to_chars_result result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

namespace {

double parse_double(const std::string& field, const std::string& where) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const std::from_chars_result result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end) {
    throw ConfigError("bad number \"" + field + "\" in " + where);
  }
  return value;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  fields.push_back(current);
  return fields;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("failed while writing " + path.string());
}

}  // namespace

std::string long_csv_text(const std::vector<LongRow>& rows) {
  std::ostringstream out;
  out << "scene,variant,seed,iteration,reward,cum_max,cum_mean\n";
  for (const LongRow& row : rows) {
    out << row.scene << ',' << row.variant << ',' << row.seed << ',' << row.iteration << ','
        << format_double(row.reward) << ',' << format_double(row.cum_max) << ','
        << format_double(row.cum_mean) << '\n';
  }
  return out.str();
}

std::string summary_csv_text(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "scene,variant,final_max_mean,final_max_std,final_mean_mean,final_mean_std,status\n";
  for (const SummaryRow& row : rows) {
    out << row.scene << ',' << row.variant << ',' << format_double(row.final_max_mean) << ','
        << format_double(row.final_max_std) << ',' << format_double(row.final_mean_mean) << ','
        << format_double(row.final_mean_std) << ',' << row.status << '\n';
  }
  return out.str();
}

void write_long_csv(const std::vector<LongRow>& rows, const std::filesystem::path& path) {
  write_text(long_csv_text(rows), path);
}

void write_summary_csv(const std::vector<SummaryRow>& rows, const std::filesystem::path& path) {
  write_text(summary_csv_text(rows), path);
}

std::vector<LongRow> parse_long_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "scene,variant,seed,iteration,reward,cum_max,cum_mean") {
    throw ConfigError("long CSV header is missing or wrong");
  }
  std::vector<LongRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 7) {
      throw ConfigError("line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                        " fields, expected 7");
    }
    const std::string where = "line " + std::to_string(line_no);
    LongRow row;
    row.scene = fields[0];
    row.variant = fields[1];
    row.seed = static_cast<std::uint64_t>(parse_double(fields[2], where));
    row.iteration = static_cast<int>(parse_double(fields[3], where));
    row.reward = parse_double(fields[4], where);
    row.cum_max = parse_double(fields[5], where);
    row.cum_mean = parse_double(fields[6], where);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace viewscout
