#pragma once

#include <cstddef>
#include <filesystem>
#include <string_view>

#include "lowdim/common/point_cloud.hpp"

namespace lowdim::dimest {

struct LpcaOptions {
  std::size_t k_neighbors = 10;
  double variance_threshold = 0.95;
};

// Local PCA: for every anchor, the eigenvalues of the covariance of its k
// nearest neighbours (the anchor excluded); the local dimension is the
// smallest m whose leading eigenvalues explain at least the threshold of the
// variance. Returns the median over anchors (upper median for even counts).
int lpca_dim(const PointCloud& points, const LpcaOptions& options = {});

struct MlEstimate {
  double value = 0.0;
  std::size_t excluded_pairs = 0;  // neighbour pairs dropped because T_j = 0
  std::size_t skipped_points = 0;  // points with no usable pair
};

// Levina-Bickel estimate averaged over points:
// m(x) = [ (1/(k-1)) sum_{j<k} log(T_k / T_j) ]^-1, T_j the j-th neighbour distance.
// Pairs with T_j = 0 are dropped (the average runs over the remaining ones).
MlEstimate ml_dim(const PointCloud& points, std::size_t k_neighbors = 10);

// IDX file of unsigned bytes (magic 0x00000801 or 0x00000803, big-endian
// sizes). One row per item, the remaining axes flattened, scaled by 1/255.
PointCloud parse_idx(std::string_view bytes);
PointCloud load_idx(const std::filesystem::path& path);

}  // namespace lowdim::dimest
