#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "lowdim/common/point_cloud.hpp"
#include "lowdim/common/stats.hpp"

namespace lowdim::geometry {

struct DimEstimate {
  double value = 0.0;
  std::vector<std::pair<double, std::size_t>> scales;  // (gamma, occupied cell count)
  RateFit fit;                                         // log N against log(1/gamma)
  bool low_confidence = false;                         // every scale saw a single cell
};

// Box-counting estimate: least-squares slope of log N(gamma) on log(1/gamma)
// over grid covers at the given scales (at least three, strictly decreasing).
DimEstimate minkowski_dim(const PointCloud& points, std::span<const double> scales);

}  // namespace lowdim::geometry
