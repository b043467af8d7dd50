#pragma once

#include <cstddef>
#include <string>

#include "lowdim/approx/holder.hpp"

namespace lowdim::regression {

// Simulation targets.
//   sim61  (D-1)^-1 sum x_i x_{i+1} + D^-1 sum 2 sin(2 pi x_i) 1{x_i <= 1/2}
//          + D^-1 sum (4 pi (sqrt2 - 1)^-1 (x_i - 2^-1/2)^2 - pi (sqrt2 - 1)) 1{x_i > 1/2}
//          beta = 2, derivative oracle up to order 1 (C^1 across the kinks).
//   sim62  D^-1 sum x_i^2 1{x_i <= 1/2} + (3/4 - x_i) 1{x_i > 1/2}
//          beta = 1, value only.
// Any other name falls through to approx::named_target.
approx::HolderTarget builtin_target(const std::string& tag, std::size_t dim);

}  // namespace lowdim::regression
