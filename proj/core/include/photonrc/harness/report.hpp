#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "photonrc/harness/experiments.hpp"

namespace photonrc::harness {

/// printf "%.17g", which round-trips every double.
std::string format_number(double value);

/// Comma separated rows with a fixed header. Fields containing commas or
/// quotes are quoted.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> fields);
  std::size_t size() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// results.json (2-space indent) and every CSV file.
void write_outputs(const RunOutput& output, const std::filesystem::path& directory);

}  // namespace photonrc::harness
