#include "lowdim/net/network.hpp"

#include <algorithm>
#include <cmath>

#include "lowdim/common/error.hpp"

namespace lowdim::net {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw DomainError("matrix data size does not match its shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<Violation> validate(std::span<const Layer> layers) {
  std::vector<Violation> out;
  if (layers.empty()) {
    out.push_back({Violation::Kind::kEmpty, 0, "network has no layers"});
    return out;
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const Layer& layer = layers[l];
    if (layer.bias.size() != layer.weight.rows()) {
      out.push_back({Violation::Kind::kBiasLength, l,
                     "bias length " + std::to_string(layer.bias.size()) + " != weight rows " +
                         std::to_string(layer.weight.rows())});
    }
    if (l > 0 && layer.weight.cols() != layers[l - 1].weight.rows()) {
      out.push_back({Violation::Kind::kChain, l,
                     "weight has " + std::to_string(layer.weight.cols()) + " columns but previous layer emits " +
                         std::to_string(layers[l - 1].weight.rows())});
    }
    const auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(layer.weight.data().begin(), layer.weight.data().end(), finite) ||
        !std::all_of(layer.bias.begin(), layer.bias.end(), finite)) {
      out.push_back({Violation::Kind::kNonFinite, l, "layer holds a non-finite entry"});
    }
  }
  return out;
}

Network::Network(std::vector<Layer> layers) : layers_(std::move(layers)) {
  const auto violations = validate(layers_);
  if (!violations.empty()) {
    const Violation& v = violations.front();
    if (v.kind == Violation::Kind::kNonFinite || v.kind == Violation::Kind::kEmpty) throw DomainError(v.message);
    throw DimensionMismatch(v.layer, v.message);
  }
  sparse_.reserve(layers_.size());
  for (const Layer& layer : layers_) {
    SparseLayer s;
    s.row_start.reserve(layer.weight.rows() + 1);
    s.row_start.push_back(0);
    for (std::size_t r = 0; r < layer.weight.rows(); ++r) {
      const auto row = layer.weight.row(r);
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (row[c] != 0.0) {
          s.col.push_back(c);
          s.value.push_back(row[c]);
        }
      }
      s.row_start.push_back(s.col.size());
    }
    sparse_.push_back(std::move(s));
  }
}

void Network::forward(std::span<const double> x, std::vector<double>& cur, std::vector<double>& next) const {
  cur.assign(x.begin(), x.end());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const SparseLayer& s = sparse_[l];
    const auto& bias = layers_[l].bias;
    const bool last = l + 1 == layers_.size();
    next.resize(bias.size());
    for (std::size_t r = 0; r < bias.size(); ++r) {
      double acc = 0.0;
      for (std::size_t k = s.row_start[r]; k < s.row_start[r + 1]; ++k) acc += s.value[k] * cur[s.col[k]];
      acc += bias[r];
      next[r] = last ? acc : std::max(acc, 0.0);
    }
    cur.swap(next);
  }
}

std::vector<double> Network::evaluate(std::span<const double> x) const {
  if (x.size() != input_dim())
    throw DimensionMismatch(0, "input has length " + std::to_string(x.size()) + ", network expects " +
                                   std::to_string(input_dim()));
  std::vector<double> cur, next;
  forward(x, cur, next);
  return cur;
}

std::vector<double> Network::evaluate_batch(const PointCloud& points) const {
  if (points.dim() != input_dim())
    throw DimensionMismatch(0, "points have dimension " + std::to_string(points.dim()) + ", network expects " +
                                   std::to_string(input_dim()));
  std::vector<double> out;
  out.reserve(points.size() * output_dim());
  std::vector<double> cur, next;
  for (std::size_t i = 0; i < points.size(); ++i) {
    forward(points[i], cur, next);
    out.insert(out.end(), cur.begin(), cur.end());
  }
  return out;
}

Complexity complexity(const Network& net) {
  Complexity c;
  c.depth = net.depth();
  const auto visit = [&c](double v) {
    if (v != 0.0) ++c.param_count;
    c.max_weight = std::max(c.max_weight, std::abs(v));
  };
  for (const Layer& layer : net.layers()) {
    for (double v : layer.weight.data()) visit(v);
    for (double v : layer.bias) visit(v);
  }
  return c;
}

}  // namespace lowdim::net
