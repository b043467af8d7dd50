#include "lowdim/approx/builder.hpp"

#include <cmath>
#include <limits>

#include "lowdim/approx/polynomial.hpp"
#include "lowdim/approx/taylor.hpp"
#include "lowdim/common/error.hpp"
#include "lowdim/net/calculus.hpp"

namespace lowdim::approx {

using net::Network;

double auto_gamma(std::size_t dim, double beta, double bound, double epsilon) {
  if (dim == 0 || !(beta > 0.0) || !(bound > 0.0) || !(epsilon > 0.0))
    throw DomainError("auto_gamma: dimension, beta, M and epsilon must be positive");
  const double g = std::pow(3.0 * bound, -1.0 / beta) * std::pow(epsilon, 1.0 / beta) / static_cast<double>(dim);
  return std::min(g, 1.0);
}

Network simul_net(const geometry::HypercubeCover& cover, const Network& pol, double bound_m) {
  const std::size_t m = cover.size();
  const std::size_t dim = cover.dim();
  if (m == 0) throw DomainError("simul_net: empty cover");
  if (pol.input_dim() != dim) throw DomainError("simul_net: polynomial net input is not R^D");
  if (pol.output_dim() != m)
    throw DomainError("simul_net: polynomial net has " + std::to_string(pol.output_dim()) + " outputs for " +
                      std::to_string(m) + " cubes");
  std::vector<Network> gates;
  gates.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto c = cover.center(i);
    gates.push_back(net::concat(net::cut_net(c, cover.gamma(), bound_m), net::filter_net(dim, m, i)));
  }
  const std::vector<Network> front{net::identity_net(dim, pol.depth()), pol};
  return net::concat(net::parallel_shared_input(gates), net::parallel_shared_input(front));
}

Approximator build_approximator(const HolderTarget& target, const PointCloud& support_points, double d_bound,
                                double epsilon, const BuildOptions& options) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("build_approximator: epsilon must lie in (0, 1)");
  if (!(d_bound > 0.0)) throw DomainError("build_approximator: intrinsic dimension bound must be positive");
  if (support_points.empty()) throw DomainError("build_approximator: empty support");
  if (support_points.dim() != target.dim) throw DomainError("build_approximator: support dimension differs from target");
  if (!support_points.in_unit_cube()) throw DomainError("build_approximator: support points outside [0,1]^D");
  if (!target.value || !target.deriv) throw DomainError("build_approximator: target lacks an oracle");

  const std::size_t dim = target.dim;
  const double bound = target.bound;
  const double shift = bound + 1.0;
  const double gamma = options.gamma.value_or(auto_gamma(dim, target.beta, bound, epsilon));
  const auto cover = geometry::grid_cover(support_points, gamma);

  std::vector<Polynomial> polys;
  polys.reserve(cover.size());
  for (std::size_t i = 0; i < cover.size(); ++i) {
    // Centre of the cube clipped to [0,1]^D: every point of the dilated cube
    // inside [0,1]^D stays within gamma of it.
    std::vector<double> c = cover.anchor(i);
    for (double& v : c) v = 0.5 * (v + std::min(v + gamma, 1.0));
    Polynomial p = taylor_expand(target, c, options.taylor_degree);
    p.coeffs[MultiIndex(dim, 0)] += shift;
    polys.push_back(std::move(p));
  }

  const auto partition = geometry::partition_cover(cover);
  // Greedy partition never needs more than 3^D groups; padding the sum layer
  // to that count keeps the max stage, and so the depth, fixed across epsilon.
  std::size_t rows = 1;
  for (std::size_t l = 0; l < dim && rows <= 4096; ++l) rows *= 3;
  if (rows > 4096) rows = partition.groups.size();
  const Network sum = net::group_sum_net(partition.groups, cover.size(), rows);
  const Network max = net::max_net(rows);
  const Network clip = net::clip_net(bound);

  for (std::size_t boost = 0; boost <= options.max_refinements; ++boost) {
    MulOptions mul{options.sawtooth_levels, options.max_refinements, boost};
    PolNet pol = pol_net(polys, epsilon / 2.0, mul);
    const std::vector<Network> chain{clip, max, sum, simul_net(cover, pol.net, bound)};
    Network net = net::concat_chain(chain);
    const SupError err = verify_sup_error(net, target.value, support_points);
    if (err.value <= epsilon) {
      ApproximatorSpec spec;
      spec.epsilon = epsilon;
      spec.gamma = gamma;
      spec.intrinsic_dim_bound = d_bound;
      spec.built = net::complexity(net);
      spec.cube_count = cover.size();
      spec.group_count = partition.groups.size();
      spec.sum_rows = rows;
      spec.teeth = pol.teeth;
      spec.empirical_sup_error = err.value;
      return Approximator{std::move(net), spec};
    }
    if (pol.teeth == 0) break;  // nothing left to refine
  }
  throw ConvergenceError("build_approximator: empirical sup error stayed above epsilon");
}

SupError verify_sup_error(const Network& net, const std::function<double(std::span<const double>)>& target,
                          const PointCloud& eval_points) {
  if (eval_points.empty()) throw DomainError("verify_sup_error: no evaluation points");
  if (net.output_dim() != 1) throw DomainError("verify_sup_error: network must have one output");
  const auto out = net.evaluate_batch(eval_points);
  SupError best;
  best.value = -1.0;
  for (std::size_t i = 0; i < eval_points.size(); ++i) {
    double e = std::abs(out[i] - target(eval_points[i]));
    if (std::isnan(e)) e = std::numeric_limits<double>::infinity();
    if (e > best.value) {
      best.value = e;
      best.index = i;
    }
  }
  best.point.assign(eval_points[best.index].begin(), eval_points[best.index].end());
  return best;
}

}  // namespace lowdim::approx
