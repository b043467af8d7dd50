#include "lowdim/geometry/cover.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lowdim/common/error.hpp"

namespace lowdim::geometry {
namespace {

std::int64_t cells_per_axis(double gamma) {
  // Tolerate 1/gamma landing a hair above an integer.
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(1.0 / gamma - 1e-9)));
}

// Visits every offset in {-1, 0, 1}^dim.
template <typename F>
void for_each_neighbour_offset(std::size_t dim, F&& f) {
  std::vector<std::int64_t> offset(dim, -1);
  while (true) {
    f(offset);
    std::size_t i = 0;
    while (i < dim && offset[i] == 1) offset[i++] = -1;
    if (i == dim) return;
    ++offset[i];
  }
}

}  // namespace

HypercubeCover::HypercubeCover(double gamma, std::size_t dim, std::vector<CellCoord> cells)
    : gamma_(gamma), dim_(dim), cells_(std::move(cells)) {
  if (!(gamma_ > 0.0)) throw DomainError("cover: gamma must be positive");
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].size() != dim_) throw DomainError("cover: cell dimension mismatch");
    index_.emplace(cells_[i], i);
  }
}

std::optional<std::size_t> HypercubeCover::index_of(const CellCoord& coord) const {
  const auto it = index_.find(coord);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<double> HypercubeCover::center(std::size_t index) const {
  const CellCoord& c = cells_.at(index);
  std::vector<double> out(dim_);
  for (std::size_t l = 0; l < dim_; ++l) out[l] = (static_cast<double>(c[l]) + 0.5) * gamma_;
  return out;
}

std::vector<double> HypercubeCover::anchor(std::size_t index) const {
  const CellCoord& c = cells_.at(index);
  std::vector<double> out(dim_);
  for (std::size_t l = 0; l < dim_; ++l) out[l] = static_cast<double>(c[l]) * gamma_;
  return out;
}

CellCoord HypercubeCover::locate(std::span<const double> point) const {
  if (point.size() != dim_) throw DomainError("cover: point dimension mismatch");
  const std::int64_t last = cells_per_axis(gamma_) - 1;
  CellCoord c(dim_);
  for (std::size_t l = 0; l < dim_; ++l) {
    if (!(point[l] >= 0.0 && point[l] <= 1.0))
      throw DomainError("cover: point coordinate " + std::to_string(point[l]) + " outside [0, 1]");
    c[l] = std::min(static_cast<std::int64_t>(std::floor(point[l] / gamma_)), last);
  }
  return c;
}

std::vector<std::size_t> HypercubeCover::neighbours(std::size_t index) const {
  const CellCoord& base = cells_.at(index);
  std::vector<std::size_t> out;
  CellCoord probe(dim_);
  for_each_neighbour_offset(dim_, [&](const std::vector<std::int64_t>& off) {
    for (std::size_t l = 0; l < dim_; ++l) probe[l] = base[l] + off[l];
    if (auto j = index_of(probe)) out.push_back(*j);
  });
  std::sort(out.begin(), out.end());
  return out;
}

HypercubeCover grid_cover(const PointCloud& points, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("grid_cover: gamma must lie in (0, 1]");
  if (points.empty()) throw DomainError("grid_cover: no points");
  HypercubeCover probe(gamma, points.dim(), {});
  std::set<CellCoord> cells;
  for (std::size_t i = 0; i < points.size(); ++i) cells.insert(probe.locate(points[i]));
  return HypercubeCover(gamma, points.dim(), std::vector<CellCoord>(cells.begin(), cells.end()));
}

double set_distance(const CellCoord& a, const CellCoord& b, double gamma) {
  if (a.size() != b.size()) throw DomainError("set_distance: cells differ in dimension");
  double d = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) {
    const auto gap = std::abs(a[l] - b[l]) - 1;
    d = std::max(d, gamma * static_cast<double>(std::max<std::int64_t>(gap, 0)));
  }
  return d;
}

CoverPartition partition_cover(const HypercubeCover& cover) {
  CoverPartition partition;
  std::vector<std::size_t> remaining(cover.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  // Two distinct cells are >= gamma apart iff some axis differs by >= 2, i.e.
  // iff neither is a Chebyshev neighbour of the other.
  std::vector<char> blocked(cover.size());
  while (!remaining.empty()) {
    std::fill(blocked.begin(), blocked.end(), 0);
    std::vector<std::size_t> group, rest;
    for (std::size_t idx : remaining) {
      if (blocked[idx]) {
        rest.push_back(idx);
        continue;
      }
      group.push_back(idx);
      for (std::size_t nb : cover.neighbours(idx)) blocked[nb] = 1;
    }
    partition.groups.push_back(std::move(group));
    remaining = std::move(rest);
  }
  return partition;
}

}  // namespace lowdim::geometry
