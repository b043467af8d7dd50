#include "lowdim/regression/dataset.hpp"

#include <cmath>
#include <random>

#include "lowdim/common/error.hpp"
#include "lowdim/common/random.hpp"

namespace lowdim::regression {

RegressionDataset generate_dataset(const approx::HolderTarget& target, const geometry::SupportSpec& support,
                                   std::size_t n, double sigma2, std::uint64_t seed) {
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) throw DomainError("generate_dataset: sigma2 must be nonnegative");
  if (support.ambient_dim != target.dim) throw DomainError("generate_dataset: support and target dimensions differ");
  RegressionDataset ds;
  ds.sigma2 = sigma2;
  ds.seed = seed;
  ds.support = support;
  ds.x = geometry::generate_support(support, n, derive_seed(seed, {1}));
  ds.y.resize(n);
  Rng noise_rng(derive_seed(seed, {2}));
  std::normal_distribution<double> noise(0.0, std::sqrt(sigma2));
  for (std::size_t i = 0; i < n; ++i) {
    ds.y[i] = target.value(ds.x[i]);
    if (sigma2 > 0.0) ds.y[i] += noise(noise_rng);
  }
  return ds;
}

}  // namespace lowdim::regression
