#include "lowdim/regression/metrics.hpp"

#include <cmath>

#include "lowdim/common/error.hpp"

namespace lowdim::regression {

double l2_error(std::span<const double> predictions, const approx::HolderTarget& target, const PointCloud& points) {
  if (points.empty()) throw DomainError("l2_error: empty validation set");
  if (predictions.size() != points.size()) throw DomainError("l2_error: one prediction per point required");
  double s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double e = predictions[i] - target.value(points[i]);
    s += e * e;
  }
  return s / static_cast<double>(points.size());
}

double l2_error(const std::function<double(std::span<const double>)>& predictor, const approx::HolderTarget& target,
                const PointCloud& points) {
  if (points.empty()) throw DomainError("l2_error: empty validation set");
  std::vector<double> pred(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) pred[i] = predictor(points[i]);
  return l2_error(pred, target, points);
}

RateFit fit_rate(std::span<const std::pair<double, double>> points) {
  std::vector<double> lx, ly;
  std::size_t excluded = 0;
  for (const auto& [n, err] : points) {
    if (!(n > 0.0) || !(err > 0.0)) {
      ++excluded;
      continue;
    }
    lx.push_back(std::log(n));
    ly.push_back(std::log(err));
  }
  if (lx.size() < 2) throw DomainError("fit_rate: fewer than two points with positive n and error");
  RateFit fit = ols_fit(lx, ly);
  fit.excluded = excluded;
  return fit;
}

double entropy_bound(double param_count, double depth, double max_weight, double epsilon) {
  if (!(param_count >= 1.0) || !(depth >= 1.0) || !(max_weight > 0.0) || !(epsilon > 0.0))
    throw DomainError("entropy_bound: need W >= 1, L >= 1, B > 0, epsilon > 0");
  return param_count * (std::log(2.0) + std::log(depth) + depth * std::log(max_weight) +
                        depth * std::log(param_count + 1.0) - std::log(epsilon));
}

}  // namespace lowdim::regression
