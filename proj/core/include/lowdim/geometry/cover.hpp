#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "lowdim/common/point_cloud.hpp"

namespace lowdim::geometry {

// Integer grid coordinate of a cube; its anchor (lower corner) is coord * gamma.
using CellCoord = std::vector<std::int64_t>;

// Side-gamma grid cubes covering a point set. Cells are kept in lexicographic
// order and that position is the cube index psi (zero-based).
class HypercubeCover {
 public:
  HypercubeCover(double gamma, std::size_t dim, std::vector<CellCoord> cells);

  double gamma() const noexcept { return gamma_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return cells_.size(); }
  const std::vector<CellCoord>& cells() const noexcept { return cells_; }
  const CellCoord& cell(std::size_t index) const { return cells_.at(index); }

  std::optional<std::size_t> index_of(const CellCoord& coord) const;
  std::vector<double> center(std::size_t index) const;
  std::vector<double> anchor(std::size_t index) const;

  // Cube holding `point` under the same cell convention as grid_cover.
  CellCoord locate(std::span<const double> point) const;

  // Indices of covering cubes within Chebyshev cell distance 1 of `index`,
  // the index itself included.
  std::vector<std::size_t> neighbours(std::size_t index) const;

 private:
  double gamma_;
  std::size_t dim_;
  std::vector<CellCoord> cells_;
  std::map<CellCoord, std::size_t> index_;
};

// Occupied cells of the side-gamma grid anchored at the origin. Points on the
// upper face x_l = 1 fall in the last cell of that axis.
HypercubeCover grid_cover(const PointCloud& points, double gamma);

// Max-norm distance between the closed cubes of two cells.
double set_distance(const CellCoord& a, const CellCoord& b, double gamma);

// Groups of cube indices; distinct members of one group are at set distance >= gamma.
struct CoverPartition {
  std::vector<std::vector<std::size_t>> groups;
};

// Greedy partition: group i repeatedly takes, in psi order, every remaining
// cube at distance >= gamma from all cubes already in group i. On a grid cover
// this yields at most 3^D (hence at most 5^D) groups.
CoverPartition partition_cover(const HypercubeCover& cover);

}  // namespace lowdim::geometry
