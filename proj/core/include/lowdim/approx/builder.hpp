#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lowdim/approx/holder.hpp"
#include "lowdim/common/point_cloud.hpp"
#include "lowdim/geometry/cover.hpp"
#include "lowdim/net/network.hpp"

namespace lowdim::approx {

struct BuildOptions {
  std::size_t sawtooth_levels = 3;
  std::size_t max_refinements = 12;
  std::optional<unsigned> taylor_degree;  // default holder_degree(beta)
  std::optional<double> gamma;            // default auto_gamma(...)
};

struct ApproximatorSpec {
  double epsilon = 0.0;
  double gamma = 0.0;
  double intrinsic_dim_bound = 0.0;
  net::Complexity built;
  std::size_t cube_count = 0;
  std::size_t group_count = 0;
  std::size_t sum_rows = 0;  // channels fed to the max stage
  std::size_t teeth = 0;     // 0 when no product network was needed
  double empirical_sup_error = 0.0;
};

struct Approximator {
  net::Network network;
  ApproximatorSpec spec;
};

// gamma = D^-1 (3M)^(-1/beta) epsilon^(1/beta), capped at 1.
double auto_gamma(std::size_t dim, double beta, double bound, double epsilon);

// |cover|-output network on R^D. Output i gates output i of `pol` with the
// cut network of cube i: equal to it inside the cube when it lies in
// [0, 2M+2], zero outside the cube dilated by gamma/2.
net::Network simul_net(const geometry::HypercubeCover& cover, const net::Network& pol, double bound_m);

// Builds the approximator of `target` on the support sampled by
// `support_points`: shift by M+1, grid cover of side gamma, Taylor polynomial
// at every cube centre, simultaneous polynomial net at epsilon/2, cut gates,
// partition into groups of well-separated cubes, group sums, max, clip.
// The sup error over `support_points` must come out <= epsilon; otherwise the
// product networks are refined (up to max_refinements) before ConvergenceError.
Approximator build_approximator(const HolderTarget& target, const PointCloud& support_points, double d_bound,
                                double epsilon, const BuildOptions& options = {});

struct SupError {
  double value = 0.0;
  std::size_t index = 0;  // first point attaining the maximum
  std::vector<double> point;
};

SupError verify_sup_error(const net::Network& net, const std::function<double(std::span<const double>)>& target,
                          const PointCloud& eval_points);

}  // namespace lowdim::approx
