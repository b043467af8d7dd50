#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace lowdim {

// Least-squares line through (x, y) pairs, typically log-log.
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;
  std::size_t excluded = 0;  // input pairs dropped before fitting
};

// Ordinary least squares of y on x. Requires at least two distinct x values.
RateFit ols_fit(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> values);

// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_stddev(std::span<const double> values);

}  // namespace lowdim
