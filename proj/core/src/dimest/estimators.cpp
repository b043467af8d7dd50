#include "lowdim/dimest/estimators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <vector>

#include "lowdim/common/error.hpp"

namespace lowdim::dimest {
namespace {

// Indices of the k nearest neighbours of point i (itself excluded), closest
// first, ties by lower index, with their Euclidean distances.
void nearest(const PointCloud& pts, std::size_t i, std::size_t k, std::vector<std::size_t>& idx,
             std::vector<double>& dist) {
  const std::size_t n = pts.size(), dim = pts.dim();
  std::vector<std::pair<double, std::size_t>> all;
  all.reserve(n - 1);
  const auto p = pts[i];
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const auto q = pts[j];
    double s = 0.0;
    for (std::size_t l = 0; l < dim; ++l) s += (p[l] - q[l]) * (p[l] - q[l]);
    all.emplace_back(s, j);
  }
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end());
  idx.resize(k);
  dist.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    idx[j] = all[j].second;
    dist[j] = std::sqrt(all[j].first);
  }
}

void require_size(const PointCloud& pts, std::size_t k, const char* who) {
  if (k == 0) throw DomainError(std::string(who) + ": k_neighbors must be positive");
  if (pts.size() < k + 1)
    throw DomainError(std::string(who) + ": need at least k_neighbors + 1 = " + std::to_string(k + 1) + " points, got " +
                      std::to_string(pts.size()));
}

std::uint32_t read_be32(std::string_view bytes, std::size_t offset) {
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < 4; ++i) v = (v << 8) | static_cast<unsigned char>(bytes[offset + i]);
  return v;
}

}  // namespace

int lpca_dim(const PointCloud& points, const LpcaOptions& options) {
  const std::size_t k = options.k_neighbors;
  require_size(points, k, "lpca_dim");
  if (!(options.variance_threshold > 0.0 && options.variance_threshold <= 1.0))
    throw DomainError("lpca_dim: variance threshold must lie in (0, 1]");
  const std::size_t dim = points.dim();
  std::vector<int> local(points.size());
  std::vector<std::size_t> idx;
  std::vector<double> dist;
  for (std::size_t i = 0; i < points.size(); ++i) {
    nearest(points, i, k, idx, dist);
    Eigen::MatrixXd X(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < dim; ++c) X(r, c) = points[idx[r]][c];
    X.rowwise() -= X.colwise().mean();
    // The nonzero spectra of X^T X and X X^T agree; decompose the smaller one.
    const Eigen::MatrixXd G = dim <= k ? Eigen::MatrixXd(X.transpose() * X) : Eigen::MatrixXd(X * X.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(G, Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = solver.eigenvalues().reverse().cwiseMax(0.0);
    const double total = ev.sum();
    if (total <= 0.0) {
      local[i] = 0;
      continue;
    }
    double acc = 0.0;
    int m = 0;
    while (m < ev.size()) {
      acc += ev[m++];
      if (acc >= options.variance_threshold * total * (1.0 - 1e-12)) break;
    }
    local[i] = m;
  }
  const auto mid = local.begin() + static_cast<std::ptrdiff_t>(local.size() / 2);
  std::nth_element(local.begin(), mid, local.end());
  return *mid;
}

MlEstimate ml_dim(const PointCloud& points, std::size_t k_neighbors) {
  if (k_neighbors < 3) throw DomainError("ml_dim: k_neighbors must be at least 3");
  require_size(points, k_neighbors, "ml_dim");
  MlEstimate est;
  double sum = 0.0;
  std::size_t used = 0;
  std::vector<std::size_t> idx;
  std::vector<double> dist;
  for (std::size_t i = 0; i < points.size(); ++i) {
    nearest(points, i, k_neighbors, idx, dist);
    const double tk = dist.back();
    double acc = 0.0;
    std::size_t pairs = 0;
    for (std::size_t j = 0; j + 1 < k_neighbors; ++j) {
      if (dist[j] == 0.0) {
        ++est.excluded_pairs;
        continue;
      }
      acc += std::log(tk / dist[j]);
      ++pairs;
    }
    if (pairs == 0 || acc <= 0.0) {
      ++est.skipped_points;
      continue;
    }
    sum += static_cast<double>(pairs) / acc;
    ++used;
  }
  if (used == 0) throw DomainError("ml_dim: every point has degenerate neighbour distances");
  est.value = sum / static_cast<double>(used);
  return est;
}

PointCloud parse_idx(std::string_view bytes) {
  if (bytes.size() < 4) throw ParseError("idx: truncated header");
  if (bytes[0] != 0 || bytes[1] != 0 || static_cast<unsigned char>(bytes[2]) != 0x08)
    throw ParseError("idx: bad magic (expected unsigned-byte data 0x000008NN)");
  const std::size_t ndims = static_cast<unsigned char>(bytes[3]);
  if (ndims != 1 && ndims != 3) throw ParseError("idx: bad magic (expected 0x00000801 or 0x00000803)");
  if (bytes.size() < 4 + 4 * ndims) throw ParseError("idx: truncated dimension header");
  std::vector<std::size_t> dims(ndims);
  for (std::size_t i = 0; i < ndims; ++i) dims[i] = read_be32(bytes, 4 + 4 * i);
  const std::size_t rows = dims[0];
  std::size_t cols = 1;
  for (std::size_t i = 1; i < ndims; ++i) cols *= dims[i];
  const std::size_t header = 4 + 4 * ndims;
  if (rows == 0 || cols == 0) throw ParseError("idx: empty payload");
  if (bytes.size() - header < rows * cols)
    throw ParseError("idx: truncated payload (expected " + std::to_string(rows * cols) + " bytes, found " +
                     std::to_string(bytes.size() - header) + ")");
  std::vector<double> data(rows * cols);
  for (std::size_t i = 0; i < data.size(); ++i)
    data[i] = static_cast<unsigned char>(bytes[header + i]) / 255.0;
  return PointCloud(cols, std::move(data));
}

PointCloud load_idx(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("idx: cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_idx(bytes);
}

}  // namespace lowdim::dimest
