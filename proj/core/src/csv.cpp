#include "heatflow/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace heatflow {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool parse_cell(std::string_view cell, double& out) {
  if (cell.empty()) return false;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto result = std::from_chars(begin, end, out);
  return result.ec == std::errc{} && result.ptr == end;
}

}  // namespace

Dataset parse_csv(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;  // (row number, text)
  {
    std::string_view rest = text;
    std::size_t row = 1;
    while (!rest.empty()) {
      const std::size_t nl = rest.find('\n');
      const std::string_view line =
          nl == std::string_view::npos ? rest : rest.substr(0, nl);
      lines.emplace_back(row, line);
      if (nl == std::string_view::npos) break;
      rest.remove_prefix(nl + 1);
      ++row;
    }
    // Tolerate trailing blank lines only.
    while (!lines.empty() && trim(lines.back().second).empty()) lines.pop_back();
  }
  if (lines.empty()) {
    throw std::runtime_error("empty CSV input");
  }

  std::vector<Vec> points;
  std::size_t dim = 0;
  bool saw_data = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto [row, line] = lines[i];
    if (trim(line).empty()) {
      throw std::runtime_error("ragged row " + std::to_string(row));
    }
    const auto fields = split_fields(line);

    Vec coords(fields.size());
    bool numeric = true;
    for (std::size_t f = 0; f < fields.size(); ++f) {
      if (!parse_cell(fields[f], coords[f])) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (i == 0) continue;  // header row
      throw std::runtime_error("non-numeric cell in row " + std::to_string(row));
    }
    if (!saw_data) {
      dim = coords.size();
      saw_data = true;
    } else if (coords.size() != dim) {
      throw std::runtime_error("ragged row " + std::to_string(row));
    }
    points.push_back(std::move(coords));
  }
  if (points.empty()) {
    throw std::runtime_error("CSV contains no data rows");
  }
  return Dataset(std::move(points));
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str());
}

}  // namespace heatflow
