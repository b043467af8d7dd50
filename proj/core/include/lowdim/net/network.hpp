#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lowdim/common/point_cloud.hpp"

namespace lowdim::net {

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// One affine map (A, b). The ReLU is applied after every layer but the last.
struct Layer {
  Matrix weight;
  std::vector<double> bias;

  friend bool operator==(const Layer&, const Layer&) = default;
};

// Nonzero parameter count W, depth L and largest absolute entry B.
struct Complexity {
  std::size_t param_count = 0;
  std::size_t depth = 0;
  double max_weight = 0.0;

  friend bool operator==(const Complexity&, const Complexity&) = default;
};

struct Violation {
  enum class Kind { kEmpty, kBiasLength, kChain, kNonFinite };
  Kind kind;
  std::size_t layer;  // zero-based
  std::string message;
};

// Every invariant violation of a raw layer list; empty iff the list forms a network.
std::vector<Violation> validate(std::span<const Layer> layers);

// Immutable ReLU feedforward network. Construction validates the layer list
// and throws DimensionMismatch / DomainError on the first violation.
class Network {
 public:
  explicit Network(std::vector<Layer> layers);

  std::size_t input_dim() const noexcept { return layers_.front().weight.cols(); }
  std::size_t output_dim() const noexcept { return layers_.back().weight.rows(); }
  std::size_t depth() const noexcept { return layers_.size(); }
  const std::vector<Layer>& layers() const noexcept { return layers_; }

  std::vector<double> evaluate(std::span<const double> x) const;

  // Evaluates every row of `points`; result is row-major (points.size() x output_dim).
  std::vector<double> evaluate_batch(const PointCloud& points) const;

  friend bool operator==(const Network& a, const Network& b) { return a.layers_ == b.layers_; }

 private:
  struct SparseLayer {
    std::vector<std::size_t> row_start;
    std::vector<std::size_t> col;
    std::vector<double> value;
  };

  void forward(std::span<const double> x, std::vector<double>& cur, std::vector<double>& next) const;

  std::vector<Layer> layers_;
  std::vector<SparseLayer> sparse_;
};

Complexity complexity(const Network& net);

}  // namespace lowdim::net
