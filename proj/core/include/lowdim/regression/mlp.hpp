#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lowdim/approx/holder.hpp"
#include "lowdim/common/point_cloud.hpp"
#include "lowdim/net/network.hpp"
#include "lowdim/regression/dataset.hpp"

namespace lowdim::regression {

struct TrainConfig {
  std::vector<std::size_t> hidden;  // empty: three hidden layers of width D
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  std::size_t epochs = 2000;
  std::size_t batch_size = 0;  // 0: full batch for n <= 512, else 128
  double init_scale = 1.0;     // weights ~ N(0, init_scale^2), biases 0
  std::optional<double> clip_bound;  // C_B; default max |f0(X_i)|
  std::uint64_t seed = 0;
};

// Trained network together with the clipping bound applied at prediction time.
struct TrainedPredictor {
  net::Network net;
  double clip_bound = 0.0;
  double final_loss = 0.0;  // mean squared training error of the unclipped net

  double predict(std::span<const double> x) const;
  std::vector<double> predict_batch(const PointCloud& points) const;
};

// Least squares ERM over ReLU networks by Adam on minibatches with a seeded
// shuffle every epoch. C_B must cover |f0| on the training inputs.
// Throws ConvergenceError naming the epoch if the loss becomes non-finite.
TrainedPredictor train_erm(const RegressionDataset& data, const approx::HolderTarget& target,
                           const TrainConfig& config = {});

}  // namespace lowdim::regression
