#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lowdim/approx/holder.hpp"
#include "lowdim/common/point_cloud.hpp"
#include "lowdim/geometry/support.hpp"

namespace lowdim::regression {

struct RegressionDataset {
  PointCloud x;
  std::vector<double> y;
  double sigma2 = 0.0;
  std::uint64_t seed = 0;
  geometry::SupportSpec support;

  std::size_t size() const noexcept { return y.size(); }
};

// X from the support generator, Y = f0(X) + N(0, sigma2). The design and the
// noise use independent streams derived from `seed`.
RegressionDataset generate_dataset(const approx::HolderTarget& target, const geometry::SupportSpec& support,
                                   std::size_t n, double sigma2, std::uint64_t seed);

}  // namespace lowdim::regression
