#include "lowdim/common/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "lowdim/common/error.hpp"

namespace lowdim {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& text, std::size_t row) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ParseError("row " + std::to_string(row) + ": cannot parse '" + t + "' as a number");
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

PointCloud read_point_cloud_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty point-cloud CSV");
  const auto header = split_fields(trim(line));
  const std::size_t dim = header.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if (trim(header[i]) != "x" + std::to_string(i + 1))
      throw ParseError("header column " + std::to_string(i + 1) + " should be 'x" + std::to_string(i + 1) + "'");
  }
  PointCloud cloud(dim);
  std::vector<double> point(dim);
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    line = trim(line);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != dim)
      throw ParseError("row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                       " fields, expected " + std::to_string(dim));
    for (std::size_t j = 0; j < dim; ++j) point[j] = parse_double(fields[j], row);
    cloud.push_back(point);
  }
  return cloud;
}

PointCloud read_point_cloud_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_point_cloud_csv(in);
}

void write_point_cloud_csv(std::ostream& out, const PointCloud& cloud) {
  for (std::size_t j = 0; j < cloud.dim(); ++j) out << (j ? "," : "") << 'x' << j + 1;
  out << '\n';
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud[i];
    for (std::size_t j = 0; j < p.size(); ++j) out << (j ? "," : "") << format_double(p[j]);
    out << '\n';
  }
}

void write_point_cloud_csv(const std::filesystem::path& path, const PointCloud& cloud) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_point_cloud_csv(out, cloud);
}

}  // namespace lowdim
