#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lowdim/common/point_cloud.hpp"
#include "lowdim/regression/dataset.hpp"

namespace lowdim::regression {

// Mean of Y over the k nearest training inputs (Euclidean, ties by lower index).
std::vector<double> knn_regress(const PointCloud& train_x, std::span<const double> train_y, std::size_t k,
                                const PointCloud& queries);

struct NwPrediction {
  std::vector<double> values;
  std::size_t fallbacks = 0;  // queries answered by 1-NN because every weight underflowed
};

// Nadaraya-Watson with the Gaussian kernel exp(-|x - X_i|^2 / (2 h^2)).
NwPrediction nw_regress(const PointCloud& train_x, std::span<const double> train_y, double bandwidth,
                        const PointCloud& queries);

enum class Smoother { kKnn, kNw };

struct CvResult {
  double best = 0.0;
  std::vector<double> scores;  // mean squared validation error per grid value, grid order
};

// K-fold cross-validation of k (kKnn, grid values are rounded integers) or
// the bandwidth (kNw). Folds come from a seeded shuffle of the indices; the
// lowest mean squared error wins, ties going to the smallest grid value.
// Grid values a fold cannot support (k above the training size) score +inf.
CvResult cross_validate(const RegressionDataset& data, Smoother method, std::span<const double> grid,
                        std::size_t folds, std::uint64_t seed);

// Same, with an explicit fold label in [0, folds) for every sample.
CvResult cross_validate(const RegressionDataset& data, Smoother method, std::span<const double> grid,
                        std::span<const std::size_t> fold_of);

}  // namespace lowdim::regression
