#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lowdim/common/point_cloud.hpp"

namespace lowdim {

// Point-cloud CSV: header `x1,...,xD`, then one point per row.
PointCloud read_point_cloud_csv(std::istream& in);
PointCloud read_point_cloud_csv(const std::filesystem::path& path);
void write_point_cloud_csv(std::ostream& out, const PointCloud& cloud);
void write_point_cloud_csv(const std::filesystem::path& path, const PointCloud& cloud);

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace lowdim
