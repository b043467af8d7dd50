#include "lowdim/net/calculus.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "lowdim/common/error.hpp"

namespace lowdim::net {
namespace {

Layer stack_rows_negated(const Layer& layer) {
  const std::size_t rows = layer.weight.rows();
  const std::size_t cols = layer.weight.cols();
  Layer out{Matrix(2 * rows, cols), std::vector<double>(2 * rows)};
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      out.weight(r, c) = layer.weight(r, c);
      out.weight(rows + r, c) = -layer.weight(r, c);
    }
    out.bias[r] = layer.bias[r];
    out.bias[rows + r] = -layer.bias[r];
  }
  return out;
}

Layer stack_cols_negated(const Layer& layer) {
  const std::size_t rows = layer.weight.rows();
  const std::size_t cols = layer.weight.cols();
  Layer out{Matrix(rows, 2 * cols), layer.bias};
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      out.weight(r, c) = layer.weight(r, c);
      out.weight(r, cols + c) = -layer.weight(r, c);
    }
  }
  return out;
}

Layer block_diagonal(const std::vector<const Layer*>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const Layer* b : blocks) {
    rows += b->weight.rows();
    cols += b->weight.cols();
  }
  Layer out{Matrix(rows, cols), {}};
  out.bias.reserve(rows);
  std::size_t r0 = 0, c0 = 0;
  for (const Layer* b : blocks) {
    for (std::size_t r = 0; r < b->weight.rows(); ++r)
      for (std::size_t c = 0; c < b->weight.cols(); ++c) out.weight(r0 + r, c0 + c) = b->weight(r, c);
    out.bias.insert(out.bias.end(), b->bias.begin(), b->bias.end());
    r0 += b->weight.rows();
    c0 += b->weight.cols();
  }
  return out;
}

Layer vertical_stack(const std::vector<const Layer*>& blocks) {
  std::size_t rows = 0;
  const std::size_t cols = blocks.front()->weight.cols();
  for (const Layer* b : blocks) rows += b->weight.rows();
  Layer out{Matrix(rows, cols), {}};
  out.bias.reserve(rows);
  std::size_t r0 = 0;
  for (const Layer* b : blocks) {
    for (std::size_t r = 0; r < b->weight.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) out.weight(r0 + r, c) = b->weight(r, c);
    out.bias.insert(out.bias.end(), b->bias.begin(), b->bias.end());
    r0 += b->weight.rows();
  }
  return out;
}

void require_equal_depth(std::span<const Network> nets, const char* what) {
  for (const Network& n : nets) {
    if (n.depth() != nets.front().depth())
      throw DomainError(std::string(what) + ": depths differ (" + std::to_string(nets.front().depth()) + " vs " +
                        std::to_string(n.depth()) + "); pad the shallower network with identity_net via concat");
  }
}

}  // namespace

Network concat(const Network& second, const Network& first) {
  if (first.output_dim() != second.input_dim())
    throw DimensionMismatch(first.depth(), "concat: first emits " + std::to_string(first.output_dim()) +
                                               " values, second expects " + std::to_string(second.input_dim()));
  const auto& f = first.layers();
  const auto& s = second.layers();
  std::vector<Layer> layers;
  layers.reserve(f.size() + s.size());
  layers.insert(layers.end(), f.begin(), f.end() - 1);
  layers.push_back(stack_rows_negated(f.back()));
  layers.push_back(stack_cols_negated(s.front()));
  layers.insert(layers.end(), s.begin() + 1, s.end());
  return Network(std::move(layers));
}

Network concat_chain(std::span<const Network> nets) {
  if (nets.empty()) throw DomainError("concat_chain: no networks");
  Network acc = nets.back();
  for (std::size_t i = nets.size() - 1; i-- > 0;) acc = concat(nets[i], acc);
  return acc;
}

Network parallel_shared_input(std::span<const Network> nets) {
  if (nets.empty()) throw DomainError("parallel_shared_input: no networks");
  require_equal_depth(nets, "parallel_shared_input");
  for (const Network& n : nets) {
    if (n.input_dim() != nets.front().input_dim())
      throw DomainError("parallel_shared_input: input dimensions differ (" + std::to_string(nets.front().input_dim()) +
                        " vs " + std::to_string(n.input_dim()) + ")");
  }
  std::vector<Layer> layers;
  std::vector<const Layer*> blocks(nets.size());
  for (std::size_t l = 0; l < nets.front().depth(); ++l) {
    for (std::size_t i = 0; i < nets.size(); ++i) blocks[i] = &nets[i].layers()[l];
    layers.push_back(l == 0 ? vertical_stack(blocks) : block_diagonal(blocks));
  }
  return Network(std::move(layers));
}

Network parallel_split_input(std::span<const Network> nets) {
  if (nets.empty()) throw DomainError("parallel_split_input: no networks");
  require_equal_depth(nets, "parallel_split_input");
  std::vector<Layer> layers;
  std::vector<const Layer*> blocks(nets.size());
  for (std::size_t l = 0; l < nets.front().depth(); ++l) {
    for (std::size_t i = 0; i < nets.size(); ++i) blocks[i] = &nets[i].layers()[l];
    layers.push_back(block_diagonal(blocks));
  }
  return Network(std::move(layers));
}

Network identity_net(std::size_t dim, std::size_t depth) {
  if (dim == 0 || depth == 0) throw DomainError("identity_net: dim and depth must be positive");
  if (depth == 1) return Network({Layer{Matrix::identity(dim), std::vector<double>(dim, 0.0)}});
  std::vector<Layer> layers;
  Layer split{Matrix(2 * dim, dim), std::vector<double>(2 * dim, 0.0)};
  Layer merge{Matrix(dim, 2 * dim), std::vector<double>(dim, 0.0)};
  for (std::size_t i = 0; i < dim; ++i) {
    split.weight(i, i) = 1.0;
    split.weight(dim + i, i) = -1.0;
    merge.weight(i, i) = 1.0;
    merge.weight(i, dim + i) = -1.0;
  }
  layers.push_back(std::move(split));
  for (std::size_t l = 0; l + 2 < depth; ++l)
    layers.push_back(Layer{Matrix::identity(2 * dim), std::vector<double>(2 * dim, 0.0)});
  layers.push_back(std::move(merge));
  return Network(std::move(layers));
}

Network max_net(std::size_t arity) {
  if (arity < 2) throw DomainError("max_net: arity must be at least 2");
  const std::size_t t = std::bit_width(arity - 1);  // ceil(log2 arity)
  const std::size_t width = std::size_t{1} << (t + 1);

  Layer dummy{Matrix(width, arity), std::vector<double>(width, 0.0)};
  for (std::size_t i = 0; i < arity; ++i) dummy.weight(i, i) = 1.0;

  // max(a, b) = relu(a) + relu(b - a) for a, b >= 0.
  const Network max2({Layer{Matrix(2, 2, {1.0, 0.0, -1.0, 1.0}), {0.0, 0.0}},
                      Layer{Matrix(1, 2, {1.0, 1.0}), {0.0}}});

  Network acc({std::move(dummy)});
  for (std::size_t copies = width / 2; copies >= 1; copies /= 2) {
    const std::vector<Network> units(copies, max2);
    acc = concat(parallel_split_input(units), acc);
  }
  return acc;
}

Network cut_net(std::span<const double> center, double gamma, double bound_m) {
  const std::size_t dim = center.size();
  if (dim == 0) throw DomainError("cut_net: empty center");
  if (!(gamma > 0.0)) throw DomainError("cut_net: gamma must be positive");
  if (!(bound_m > 0.0)) throw DomainError("cut_net: M must be positive");
  const double scale = 2.0 * bound_m + 2.0;

  Layer hinge{Matrix(4 * dim + 2, dim + 1), std::vector<double>(4 * dim + 2, 0.0)};
  const double offsets[4] = {gamma, gamma / 2.0, -gamma / 2.0, -gamma};
  for (std::size_t l = 0; l < dim; ++l) {
    for (std::size_t k = 0; k < 4; ++k) {
      hinge.weight(4 * l + k, l) = 1.0;
      hinge.bias[4 * l + k] = -center[l] + offsets[k];
    }
  }
  hinge.weight(4 * dim, dim) = 1.0;      // relu(y)
  hinge.weight(4 * dim + 1, dim) = 1.0;  // relu(y - (2M+2))
  hinge.bias[4 * dim + 1] = -scale;

  Layer gate{Matrix(1, 4 * dim + 2), {-static_cast<double>(dim)}};
  const double slopes[4] = {2.0 / gamma, -2.0 / gamma, -2.0 / gamma, 2.0 / gamma};
  for (std::size_t l = 0; l < dim; ++l)
    for (std::size_t k = 0; k < 4; ++k) gate.weight(0, 4 * l + k) = slopes[k];
  gate.weight(0, 4 * dim) = 1.0 / scale;
  gate.weight(0, 4 * dim + 1) = -1.0 / scale;

  Layer out{Matrix(1, 1, {scale}), {0.0}};
  return Network({std::move(hinge), std::move(gate), std::move(out)});
}

Network clip_net(double bound_m) {
  if (!(bound_m > 0.0)) throw DomainError("clip_net: M must be positive");
  return Network({Layer{Matrix(1, 1, {1.0}), {-1.0}},
                  Layer{Matrix(1, 1, {-1.0}), {2.0 * bound_m}},
                  Layer{Matrix(1, 1, {-1.0}), {bound_m}}});
}

Network filter_net(std::size_t dim, std::size_t m, std::size_t keep_index) {
  if (dim == 0) throw DomainError("filter_net: dim must be positive");
  if (keep_index >= m)
    throw DomainError("filter_net: keep_index " + std::to_string(keep_index) + " out of range for m = " +
                      std::to_string(m));
  Layer layer{Matrix(dim + 1, dim + m), std::vector<double>(dim + 1, 0.0)};
  for (std::size_t i = 0; i < dim; ++i) layer.weight(i, i) = 1.0;
  layer.weight(dim, dim + keep_index) = 1.0;
  return Network({std::move(layer)});
}

Network group_sum_net(const std::vector<std::vector<std::size_t>>& groups, std::size_t m, std::size_t rows) {
  if (m == 0) throw DomainError("group_sum_net: m must be positive");
  if (rows == 0) rows = groups.size();
  if (rows < groups.size()) throw DomainError("group_sum_net: fewer rows than groups");
  if (rows == 0) throw DomainError("group_sum_net: no groups");
  std::vector<int> seen(m, 0);
  Layer layer{Matrix(rows, m), std::vector<double>(rows, 0.0)};
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t idx : groups[g]) {
      if (idx >= m) throw DomainError("group_sum_net: index " + std::to_string(idx) + " out of range");
      if (seen[idx]++) throw DomainError("group_sum_net: index " + std::to_string(idx) + " assigned twice");
      layer.weight(g, idx) = 1.0;
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    if (!seen[i]) throw DomainError("group_sum_net: index " + std::to_string(i) + " is not assigned to a group");
  return Network({std::move(layer)});
}

}  // namespace lowdim::net
