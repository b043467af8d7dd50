#include "lowdim/regression/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lowdim/common/error.hpp"
#include "lowdim/common/random.hpp"

namespace lowdim::regression {
namespace {

void check_train(const PointCloud& x, std::span<const double> y, const PointCloud& q) {
  if (x.empty()) throw DomainError("regression: empty training set");
  if (x.size() != y.size()) throw DomainError("regression: X and Y differ in length");
  if (!q.empty() && q.dim() != x.dim()) throw DomainError("regression: query dimension differs from training data");
}

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) s += (a[l] - b[l]) * (a[l] - b[l]);
  return s;
}

PointCloud subset(const PointCloud& x, std::span<const std::size_t> idx) {
  PointCloud out(x.dim());
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(x[i]);
  return out;
}

}  // namespace

std::vector<double> knn_regress(const PointCloud& train_x, std::span<const double> train_y, std::size_t k,
                                const PointCloud& queries) {
  check_train(train_x, train_y, queries);
  if (k == 0 || k > train_x.size())
    throw DomainError("knn_regress: k must lie in [1, n] (k = " + std::to_string(k) + ", n = " +
                      std::to_string(train_x.size()) + ")");
  std::vector<double> out(queries.size());
  std::vector<std::pair<double, std::size_t>> d(train_x.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    for (std::size_t i = 0; i < train_x.size(); ++i) d[i] = {sq_dist(queries[q], train_x[i]), i};
    std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k), d.end());
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += train_y[d[j].second];
    out[q] = s / static_cast<double>(k);
  }
  return out;
}

NwPrediction nw_regress(const PointCloud& train_x, std::span<const double> train_y, double bandwidth,
                        const PointCloud& queries) {
  check_train(train_x, train_y, queries);
  if (!(bandwidth > 0.0)) throw DomainError("nw_regress: bandwidth must be positive");
  NwPrediction out;
  out.values.resize(queries.size());
  const double scale = 1.0 / (2.0 * bandwidth * bandwidth);
  for (std::size_t q = 0; q < queries.size(); ++q) {
    double num = 0.0, den = 0.0, best = std::numeric_limits<double>::infinity();
    std::size_t nearest = 0;
    for (std::size_t i = 0; i < train_x.size(); ++i) {
      const double d2 = sq_dist(queries[q], train_x[i]);
      if (d2 < best) {
        best = d2;
        nearest = i;
      }
      const double w = std::exp(-d2 * scale);
      num += w * train_y[i];
      den += w;
    }
    if (den > 0.0) {
      out.values[q] = num / den;
    } else {
      out.values[q] = train_y[nearest];
      ++out.fallbacks;
    }
  }
  return out;
}

CvResult cross_validate(const RegressionDataset& data, Smoother method, std::span<const double> grid,
                        std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw DomainError("cross_validate: need at least two folds");
  if (folds > data.size()) throw DomainError("cross_validate: more folds than samples");
  std::vector<std::size_t> perm(data.size());
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::size_t> fold_of(data.size());
  for (std::size_t i = 0; i < perm.size(); ++i) fold_of[perm[i]] = i % folds;
  return cross_validate(data, method, grid, fold_of);
}

CvResult cross_validate(const RegressionDataset& data, Smoother method, std::span<const double> grid,
                        std::span<const std::size_t> fold_of) {
  if (grid.empty()) throw DomainError("cross_validate: empty grid");
  if (fold_of.size() != data.size()) throw DomainError("cross_validate: one fold label per sample required");
  const std::size_t folds = fold_of.empty() ? 0 : *std::max_element(fold_of.begin(), fold_of.end()) + 1;
  if (folds < 2) throw DomainError("cross_validate: need at least two folds");

  CvResult res;
  res.scores.assign(grid.size(), 0.0);
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<std::size_t> tr, va;
    for (std::size_t i = 0; i < fold_of.size(); ++i) (fold_of[i] == f ? va : tr).push_back(i);
    if (va.empty()) continue;
    if (tr.empty()) throw DomainError("cross_validate: a fold leaves no training data");
    const PointCloud trx = subset(data.x, tr), vax = subset(data.x, va);
    std::vector<double> try_(tr.size());
    for (std::size_t j = 0; j < tr.size(); ++j) try_[j] = data.y[tr[j]];
    for (std::size_t g = 0; g < grid.size(); ++g) {
      std::vector<double> pred;
      if (method == Smoother::kKnn) {
        const double kk = std::round(grid[g]);
        if (kk < 1.0 || kk > static_cast<double>(tr.size())) {
          res.scores[g] = std::numeric_limits<double>::infinity();
          continue;
        }
        pred = knn_regress(trx, try_, static_cast<std::size_t>(kk), vax);
      } else {
        pred = nw_regress(trx, try_, grid[g], vax).values;
      }
      double sse = 0.0;
      for (std::size_t j = 0; j < va.size(); ++j) sse += (pred[j] - data.y[va[j]]) * (pred[j] - data.y[va[j]]);
      res.scores[g] += sse / static_cast<double>(data.size());
    }
  }
  std::size_t best = 0;
  for (std::size_t g = 1; g < grid.size(); ++g)
    if (res.scores[g] < res.scores[best] || (res.scores[g] == res.scores[best] && grid[g] < grid[best])) best = g;
  res.best = grid[best];
  return res;
}

}  // namespace lowdim::regression
