#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lowdim/common/point_cloud.hpp"

namespace lowdim::approx {

// alpha = (alpha_1, ..., alpha_D); order |alpha| = sum of entries.
using MultiIndex = std::vector<unsigned>;

unsigned order(const MultiIndex& alpha);

// alpha! = prod alpha_i!
double factorial(const MultiIndex& alpha);

// Every alpha in N^dim with |alpha| <= max_order, by increasing order and
// lexicographically (descending in the first coordinate) within an order.
std::vector<MultiIndex> multi_indices(std::size_t dim, unsigned max_order);

// Taylor degree for smoothness beta: the largest integer strictly below beta.
unsigned holder_degree(double beta);

// A function in the Holder ball of radius `bound`, given through oracles
// for its values and partial derivatives.
struct HolderTarget {
  std::string name;
  std::size_t dim = 1;
  double beta = 1.0;
  double bound = 1.0;
  std::function<double(std::span<const double>)> value;
  std::function<double(const MultiIndex&, std::span<const double>)> deriv;
};

// Targets with a closed-form norm bound M (beta = 2 throughout).
HolderTarget sincos_target();                                   // sin(pi x1) cos(pi x2) / 2 on [0,1]^2
HolderTarget sine_target(std::size_t dim);                      // sin(2 pi x1)
HolderTarget gaussian_bump_target(std::span<const double> center);  // exp(-|x - c|^2)
HolderTarget product_target(std::size_t dim);                   // x1 x2
HolderTarget constant_target(std::size_t dim, double c, double beta = 2.0);

// Library target by name: sincos, sine, bump (centred at 1/2), product, zero.
HolderTarget named_target(const std::string& name, std::size_t dim);

// Largest |d^alpha f(x)| over |alpha| <= holder_degree(beta) and the points.
double max_derivative(const HolderTarget& target, const PointCloud& points);

// Lower estimate of the Holder norm from the points: derivative sups for
// |alpha| below the degree plus the largest difference quotient (sup norm,
// exponent beta - degree) over all point pairs at top order.
double holder_norm_estimate(const HolderTarget& target, const PointCloud& points);

}  // namespace lowdim::approx
