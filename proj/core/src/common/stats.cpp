#include "lowdim/common/stats.hpp"

#include <algorithm>
#include <cmath>

#include "lowdim/common/error.hpp"

namespace lowdim {

RateFit ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("ols_fit: x and y lengths differ");
  if (x.size() < 2) throw DomainError("ols_fit: need at least two points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw DomainError("ols_fit: all x values are equal");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    sse += r * r;
  }
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - sse / syy, 0.0, 1.0);
  fit.points.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) fit.points.emplace_back(x[i], y[i]);
  return fit;
}

double mean(std::span<const double> values) {
  if (values.empty()) throw DomainError("mean of an empty sequence");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double sample_stddev(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = mean(values);
  double s = 0.0;
  for (double v : values) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(values.size() - 1));
}

}  // namespace lowdim
