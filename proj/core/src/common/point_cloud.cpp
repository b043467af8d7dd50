#include "lowdim/common/point_cloud.hpp"

#include <algorithm>

#include "lowdim/common/error.hpp"

namespace lowdim {

PointCloud::PointCloud(std::size_t dim, std::vector<double> data) : dim_(dim), data_(std::move(data)) {
  if (dim_ == 0 && !data_.empty()) throw DomainError("point cloud with zero dimension cannot hold data");
  if (dim_ != 0 && data_.size() % dim_ != 0) throw DomainError("point cloud data is not a multiple of its dimension");
}

void PointCloud::push_back(std::span<const double> point) {
  if (point.size() != dim_) throw DomainError("point has dimension " + std::to_string(point.size()) +
                                              ", cloud expects " + std::to_string(dim_));
  data_.insert(data_.end(), point.begin(), point.end());
}

bool PointCloud::in_unit_cube() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
}

}  // namespace lowdim
