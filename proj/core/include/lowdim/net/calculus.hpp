#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lowdim/net/network.hpp"

// Network combinators with exact realizations and (W, L, B) bookkeeping:
//   concat          L additive, B max, W <= 2 W(second) + 2 W(first)
//   parallel_*      L preserved, B max, W additive
namespace lowdim::net {

// Network realizing second(first(x)). The junction passes the intermediate
// value through the ReLU as the pair (relu(z), relu(-z)), so the composition
// is exact on all of R^n.
Network concat(const Network& second, const Network& first);

// Folds concat over `nets`, applied right to left: nets.back() runs first.
Network concat_chain(std::span<const Network> nets);

// Shared input, stacked outputs. All nets need equal input_dim and depth; pad
// shallower nets with concat(identity_net(...), net) first.
Network parallel_shared_input(std::span<const Network> nets);

// Block-diagonal network: input is the concatenation of each net's input,
// output the concatenation of each net's output. Depths must be equal.
Network parallel_split_input(std::span<const Network> nets);

// Identity on R^dim with `depth` layers. Depth 1 is the single layer (I, 0);
// larger depths carry (x, -x) through ReLUs. W = 2 dim depth for depth >= 2.
Network identity_net(std::size_t dim, std::size_t depth);

// Maximum of `arity` nonnegative inputs through a balanced tree of
// relu(x2 - x1) + relu(x1) units. Depth 2(ceil(log2 arity) + 1) + 1, B = 1.
// Inputs are zero-padded to 2^(t+1) channels; with negative inputs the
// result is the max over the rectified tree and not the plain max.
Network max_net(std::size_t arity);

// Gate (x, y) -> (2M+2) relu(sum_l trap_l(x_l) + y/(2M+2) - D) around the
// cube of side gamma centred at `center`. trap_l is 1 on |x_l - c_l| <= gamma/2,
// 0 beyond gamma, linear between. y is clamped to [0, 2M+2] inside the first
// layer, so the gate is exact for y in that range and never leaks outside
// the dilated cube. Depth 3.
Network cut_net(std::span<const double> center, double gamma, double bound_m);

// x -> min(max(1, x), 2M+1) - (M+1). Depth 3.
Network clip_net(double bound_m);

// Single affine layer R^(D+m) -> R^(D+1) keeping the first D coordinates and
// coordinate D + keep_index (keep_index is zero-based, < m).
Network filter_net(std::size_t dim, std::size_t m, std::size_t keep_index);

// Single affine layer R^m -> R^rows; row j sums the coordinates listed in
// groups[j]. Every index in [0, m) must appear in exactly one group. Rows past
// groups.size() are zero (rows = 0 means groups.size()).
Network group_sum_net(const std::vector<std::vector<std::size_t>>& groups, std::size_t m, std::size_t rows = 0);

}  // namespace lowdim::net
