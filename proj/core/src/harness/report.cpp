#include "photonrc/harness/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace photonrc::harness {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> fields) {
  if (fields.size() != header_.size()) throw std::invalid_argument("CsvTable: row width mismatch");
  rows_.push_back(std::move(fields));
}

namespace {

void append_field(std::string& out, const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_row(std::string& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out += ',';
    append_field(out, row[i]);
  }
  out += '\n';
}

}  // namespace

std::string CsvTable::str() const {
  std::string out;
  append_row(out, header_);
  for (const auto& row : rows_) append_row(out, row);
  return out;
}

void write_outputs(const RunOutput& output, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  const auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream out(directory / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (directory / name).string());
    out << body;
  };
  write("results.json", output.results.dump(2) + "\n");
  for (const auto& [name, body] : output.files) write(name, body);
}

}  // namespace photonrc::harness
