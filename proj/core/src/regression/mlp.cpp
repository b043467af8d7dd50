#include "lowdim/regression/mlp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lowdim/common/error.hpp"
#include "lowdim/common/random.hpp"

namespace lowdim::regression {
namespace {

struct Param {
  Eigen::MatrixXd w;
  Eigen::VectorXd b;
};

struct Moments {
  std::vector<Param> m, v;
};

Param zeros_like(const Param& p) {
  return {Eigen::MatrixXd::Zero(p.w.rows(), p.w.cols()), Eigen::VectorXd::Zero(p.b.size())};
}

// Forward pass over the columns of x; keeps the pre-activations for backprop.
void forward(const std::vector<Param>& params, const Eigen::MatrixXd& x, std::vector<Eigen::MatrixXd>& pre,
             std::vector<Eigen::MatrixXd>& act) {
  const std::size_t L = params.size();
  pre.resize(L);
  act.resize(L + 1);
  act[0] = x;
  for (std::size_t l = 0; l < L; ++l) {
    pre[l] = (params[l].w * act[l]).colwise() + params[l].b;
    act[l + 1] = l + 1 < L ? Eigen::MatrixXd(pre[l].cwiseMax(0.0)) : pre[l];
  }
}

}  // namespace

double TrainedPredictor::predict(std::span<const double> x) const {
  return std::clamp(net.evaluate(x)[0], -clip_bound, clip_bound);
}

std::vector<double> TrainedPredictor::predict_batch(const PointCloud& points) const {
  auto out = net.evaluate_batch(points);
  for (double& v : out) v = std::clamp(v, -clip_bound, clip_bound);
  return out;
}

TrainedPredictor train_erm(const RegressionDataset& data, const approx::HolderTarget& target,
                           const TrainConfig& config) {
  const std::size_t n = data.size();
  const std::size_t dim = data.x.dim();
  if (n == 0) throw DomainError("train_erm: empty dataset");
  if (data.x.size() != n) throw DomainError("train_erm: X and Y differ in length");
  if (target.dim != dim) throw DomainError("train_erm: target dimension differs from data");
  if (!(config.learning_rate > 0.0) || config.epochs == 0 || !(config.init_scale >= 0.0))
    throw DomainError("train_erm: learning rate, epochs and init scale must be positive");
  if (!(config.beta1 >= 0.0 && config.beta1 < 1.0 && config.beta2 >= 0.0 && config.beta2 < 1.0))
    throw DomainError("train_erm: Adam betas must lie in [0, 1)");

  double sup_f = 0.0;
  for (std::size_t i = 0; i < n; ++i) sup_f = std::max(sup_f, std::abs(target.value(data.x[i])));
  const double clip = config.clip_bound.value_or(sup_f);
  if (clip < sup_f)
    throw DomainError("train_erm: clip bound " + std::to_string(clip) + " is below sup|f0| = " + std::to_string(sup_f));

  std::vector<std::size_t> widths{dim};
  if (config.hidden.empty())
    widths.insert(widths.end(), 3, dim);
  else
    widths.insert(widths.end(), config.hidden.begin(), config.hidden.end());
  widths.push_back(1);
  for (std::size_t w : widths)
    if (w == 0) throw DomainError("train_erm: zero-width layer");

  Rng rng(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Param> params;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    Param p{Eigen::MatrixXd(widths[l + 1], widths[l]), Eigen::VectorXd::Zero(static_cast<Eigen::Index>(widths[l + 1]))};
    for (Eigen::Index c = 0; c < p.w.cols(); ++c)
      for (Eigen::Index r = 0; r < p.w.rows(); ++r) p.w(r, c) = config.init_scale * normal(rng);
    params.push_back(std::move(p));
  }
  Moments mom;
  for (const auto& p : params) {
    mom.m.push_back(zeros_like(p));
    mom.v.push_back(zeros_like(p));
  }

  Eigen::MatrixXd X(dim, n);
  Eigen::RowVectorXd Y(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < dim; ++c) X(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(i)) = data.x[i][c];
    Y(static_cast<Eigen::Index>(i)) = data.y[i];
  }

  const std::size_t batch = config.batch_size ? std::min(config.batch_size, n) : (n <= 512 ? n : 128);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Eigen::MatrixXd> pre, act;
  Eigen::MatrixXd xb;
  Eigen::RowVectorXd yb;
  std::size_t step = 0;
  double b1t = 1.0, b2t = 1.0;
  const std::size_t L = params.size();

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    if (batch < n) std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t cnt = std::min(batch, n - start);
      if (cnt == n) {
        xb = X;
        yb = Y;
      } else {
        xb.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(cnt));
        yb.resize(static_cast<Eigen::Index>(cnt));
        for (std::size_t j = 0; j < cnt; ++j) {
          xb.col(static_cast<Eigen::Index>(j)) = X.col(static_cast<Eigen::Index>(order[start + j]));
          yb(static_cast<Eigen::Index>(j)) = Y(static_cast<Eigen::Index>(order[start + j]));
        }
      }
      forward(params, xb, pre, act);
      const Eigen::RowVectorXd resid = act[L].row(0) - yb;
      epoch_loss += resid.squaredNorm();

      ++step;
      b1t *= config.beta1;
      b2t *= config.beta2;
      Eigen::MatrixXd g = (2.0 / static_cast<double>(cnt)) * resid;
      for (std::size_t l = L; l-- > 0;) {
        const Eigen::MatrixXd gw = g * act[l].transpose();
        const Eigen::VectorXd gb = g.rowwise().sum();
        if (l > 0) g = (params[l].w.transpose() * g).cwiseProduct((pre[l - 1].array() > 0.0).cast<double>().matrix());
        auto adam = [&](auto& p, auto& m, auto& v, const auto& grad) {
          m = config.beta1 * m + (1.0 - config.beta1) * grad;
          v = config.beta2 * v + (1.0 - config.beta2) * grad.cwiseProduct(grad);
          const double lr = config.learning_rate * std::sqrt(1.0 - b2t) / (1.0 - b1t);
          p.array() -= lr * m.array() / (v.array().sqrt() + config.adam_eps);
        };
        adam(params[l].w, mom.m[l].w, mom.v[l].w, gw);
        adam(params[l].b, mom.m[l].b, mom.v[l].b, gb);
      }
    }
    if (!std::isfinite(epoch_loss))
      throw ConvergenceError("train_erm: loss became non-finite at epoch " + std::to_string(epoch));
  }

  forward(params, X, pre, act);
  const double final_loss = (act[L].row(0) - Y).squaredNorm() / static_cast<double>(n);
  if (!std::isfinite(final_loss)) throw ConvergenceError("train_erm: final loss is non-finite");

  std::vector<net::Layer> layers;
  for (const auto& p : params) {
    net::Matrix w(static_cast<std::size_t>(p.w.rows()), static_cast<std::size_t>(p.w.cols()));
    for (Eigen::Index r = 0; r < p.w.rows(); ++r)
      for (Eigen::Index c = 0; c < p.w.cols(); ++c) w(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = p.w(r, c);
    layers.push_back({std::move(w), std::vector<double>(p.b.data(), p.b.data() + p.b.size())});
  }
  return TrainedPredictor{net::Network(std::move(layers)), clip, final_loss};
}

}  // namespace lowdim::regression
