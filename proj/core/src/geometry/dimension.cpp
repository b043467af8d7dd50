#include "lowdim/geometry/dimension.hpp"

#include <cmath>

#include "lowdim/common/error.hpp"
#include "lowdim/geometry/cover.hpp"

namespace lowdim::geometry {

DimEstimate minkowski_dim(const PointCloud& points, std::span<const double> scales) {
  if (scales.size() < 3) throw DomainError("minkowski_dim: need at least three scales");
  for (std::size_t i = 1; i < scales.size(); ++i)
    if (!(scales[i] < scales[i - 1])) throw DomainError("minkowski_dim: scales must be strictly decreasing");

  DimEstimate est;
  std::vector<double> log_inv_scale, log_count;
  bool all_single = true;
  for (double gamma : scales) {
    const std::size_t count = grid_cover(points, gamma).size();
    est.scales.emplace_back(gamma, count);
    all_single = all_single && count == 1;
    log_inv_scale.push_back(std::log(1.0 / gamma));
    log_count.push_back(std::log(static_cast<double>(count)));
  }
  est.fit = ols_fit(log_inv_scale, log_count);
  est.value = est.fit.slope;
  est.low_confidence = all_single;
  return est;
}

}  // namespace lowdim::geometry
