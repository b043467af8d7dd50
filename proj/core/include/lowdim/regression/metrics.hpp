#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "lowdim/approx/holder.hpp"
#include "lowdim/common/point_cloud.hpp"
#include "lowdim/common/stats.hpp"

namespace lowdim::regression {

// Mean of (predictions_i - f0(points_i))^2, the Monte-Carlo L2(mu) error.
double l2_error(std::span<const double> predictions, const approx::HolderTarget& target, const PointCloud& points);
double l2_error(const std::function<double(std::span<const double>)>& predictor, const approx::HolderTarget& target,
                const PointCloud& points);

// OLS of log error on log n over (n, error) pairs. Pairs with a nonpositive
// n or error are dropped and counted in RateFit::excluded; fewer than two
// remaining pairs is an error.
RateFit fit_rate(std::span<const std::pair<double, double>> points);

// W log(2 L B^L (W+1)^L / epsilon), natural log, evaluated term by term.
double entropy_bound(double param_count, double depth, double max_weight, double epsilon);

}  // namespace lowdim::regression
