#pragma once

#include <cstddef>

#include "lowdim/approx/holder.hpp"
#include "lowdim/net/network.hpp"

// Products through a base-q sawtooth. With `teeth` q and `levels` r,
// square_net is the piecewise-linear interpolant of x^2 on the grid of
// spacing q^-r, so |square - x^2| <= q^(-2r) / 4 on [0, 1]. q = 2 is the
// classical hat-function construction; raising q refines without adding depth.
namespace lowdim::approx {

// sup over [0, 1] of |square_net - x^2|.
double square_error_bound(std::size_t teeth, std::size_t levels);

// R -> R, depth levels + 1, hidden width teeth + 1. Exact interpolant on [0, 1].
net::Network square_net(std::size_t teeth, std::size_t levels);

// R^2 -> R. Clamps both inputs to [0, 1], then
// 2 sq((a+b)/2) - sq(a)/2 - sq(b)/2. Error <= 3 square_error_bound on [0,1]^2.
// Depth levels + 4.
net::Network product_net(std::size_t teeth, std::size_t levels);

// R^D -> R approximating x^alpha on [0,1]^D through a balanced tree of
// product_nets. Depth 1 + ceil(log2 |alpha|)(levels + 4) for |alpha| >= 2,
// depth 1 (exact) for |alpha| <= 1. Error <= 3(|alpha| - 1) square_error_bound.
net::Network monomial_net(const MultiIndex& alpha, std::size_t teeth, std::size_t levels);

struct MulOptions {
  std::size_t levels = 3;
  std::size_t max_refinements = 12;
  std::size_t teeth_boost = 0;  // added to the analytic choice of teeth
};

struct MulNet {
  net::Network net;
  std::size_t teeth = 0;
  double grid_error = 0.0;  // measured on the verification grid
};

// monomial_net with the smallest teeth whose analytic bound meets epsilon,
// then checked on a dense grid over the variables in alpha (1001 points for
// one variable, 201^2 for two, 41^3 for three, 11 per axis beyond); on a
// miss, teeth grows by one up to max_refinements times before ConvergenceError.
MulNet mul_net(const MultiIndex& alpha, double epsilon, const MulOptions& options = {});

}  // namespace lowdim::approx
