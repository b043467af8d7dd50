#include "lowdim/approx/multiplication.hpp"

#include <cmath>
#include <vector>

#include "lowdim/common/error.hpp"
#include "lowdim/net/calculus.hpp"

namespace lowdim::approx {

using net::Layer;
using net::Matrix;
using net::Network;

namespace {

void check_params(std::size_t teeth, std::size_t levels) {
  if (teeth < 2) throw DomainError("sawtooth: teeth must be at least 2");
  if (levels < 1) throw DomainError("sawtooth: levels must be at least 1");
}

// Hinge expansions g(t) = sum_j c_j relu(t - j/q) on [0, 1] of the folding
// map (0 at even j/q, 1 at odd j/q) and of the interpolant of t(1 - t).
struct Hinges {
  std::vector<double> fold, bump;
};

Hinges hinge_coefficients(std::size_t q) {
  const double qd = static_cast<double>(q);
  Hinges h{std::vector<double>(q), std::vector<double>(q)};
  h.fold[0] = qd;
  h.bump[0] = 1.0 - 1.0 / qd;
  for (std::size_t j = 1; j < q; ++j) {
    h.fold[j] = (j % 2 ? -2.0 : 2.0) * qd;
    h.bump[j] = -2.0 / qd;
  }
  return h;
}

}  // namespace

double square_error_bound(std::size_t teeth, std::size_t levels) {
  check_params(teeth, levels);
  return 0.25 * std::pow(static_cast<double>(teeth), -2.0 * static_cast<double>(levels));
}

Network square_net(std::size_t teeth, std::size_t levels) {
  check_params(teeth, levels);
  const std::size_t q = teeth, width = q + 1;
  const Hinges h = hinge_coefficients(q);
  std::vector<Layer> layers;

  // Channels 0..q-1 carry relu(t - j/q) for the current fold t, channel q the
  // running interpolant x - sum_s q^{-2(s-1)} bump(t_{s-1}), which is >= x^2 >= 0.
  Layer first{Matrix(width, 1), std::vector<double>(width, 0.0)};
  for (std::size_t j = 0; j < q; ++j) {
    first.weight(j, 0) = 1.0;
    first.bias[j] = -static_cast<double>(j) / static_cast<double>(q);
  }
  first.weight(q, 0) = 1.0;
  layers.push_back(std::move(first));

  double scale = 1.0;
  for (std::size_t s = 1; s < levels; ++s) {
    Layer mid{Matrix(width, width), std::vector<double>(width, 0.0)};
    for (std::size_t j = 0; j < q; ++j) {
      for (std::size_t i = 0; i < q; ++i) mid.weight(j, i) = h.fold[i];
      mid.bias[j] = -static_cast<double>(j) / static_cast<double>(q);
    }
    for (std::size_t i = 0; i < q; ++i) mid.weight(q, i) = -scale * h.bump[i];
    mid.weight(q, q) = 1.0;
    layers.push_back(std::move(mid));
    scale /= static_cast<double>(q * q);
  }

  Layer last{Matrix(1, width), {0.0}};
  for (std::size_t i = 0; i < q; ++i) last.weight(0, i) = -scale * h.bump[i];
  last.weight(0, q) = 1.0;
  layers.push_back(std::move(last));
  return Network(std::move(layers));
}

Network product_net(std::size_t teeth, std::size_t levels) {
  // (a, b) -> ((a'+b')/2, a', b') with a' = relu(a) - relu(a-1) the clamp to [0, 1].
  Layer hinge{Matrix(4, 2, {1, 0, 1, 0, 0, 1, 0, 1}), {0.0, -1.0, 0.0, -1.0}};
  Layer mix{Matrix(3, 4, {0.5, -0.5, 0.5, -0.5, 1, -1, 0, 0, 0, 0, 1, -1}), {0.0, 0.0, 0.0}};
  const Network prep({hinge, mix});
  const Network sq = square_net(teeth, levels);
  const std::vector<Network> squares{sq, sq, sq};
  const Network combine({Layer{Matrix(1, 3, {2.0, -0.5, -0.5}), {0.0}}});
  const std::vector<Network> chain{combine, net::parallel_split_input(squares), prep};
  return net::concat_chain(chain);
}

Network monomial_net(const MultiIndex& alpha, std::size_t teeth, std::size_t levels) {
  if (alpha.empty()) throw DomainError("monomial_net: empty multi-index");
  const std::size_t dim = alpha.size();
  const std::size_t k = order(alpha);
  if (k == 0) return Network({Layer{Matrix(1, dim), {1.0}}});

  Layer select{Matrix(k, dim), std::vector<double>(k, 0.0)};
  std::size_t row = 0;
  for (std::size_t i = 0; i < dim; ++i)
    for (unsigned a = 0; a < alpha[i]; ++a) select.weight(row++, i) = 1.0;
  Network current({std::move(select)});
  if (k == 1) return current;

  const Network prod = product_net(teeth, levels);
  const Network carry = net::identity_net(1, prod.depth());
  for (std::size_t channels = k; channels > 1; channels = (channels + 1) / 2) {
    std::vector<Network> blocks(channels / 2, prod);
    if (channels % 2) blocks.push_back(carry);
    current = net::concat(net::parallel_split_input(blocks), current);
  }
  return current;
}

MulNet mul_net(const MultiIndex& alpha, double epsilon, const MulOptions& options) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("mul_net: epsilon must lie in (0, 1)");
  if (options.levels < 1) throw DomainError("mul_net: levels must be at least 1");
  const std::size_t k = order(alpha);
  if (k <= 1) return MulNet{monomial_net(alpha, 2, options.levels), 0, 0.0};

  const double delta = epsilon / (3.0 * static_cast<double>(k - 1));
  const double need = std::pow(4.0 * delta, -1.0 / (2.0 * static_cast<double>(options.levels)));
  std::size_t teeth = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(need - 1e-12)));
  teeth += options.teeth_boost;

  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] > 0) vars.push_back(i);
  const std::size_t per_axis = vars.size() == 1 ? 1001 : vars.size() == 2 ? 201 : vars.size() == 3 ? 41 : 11;

  for (std::size_t attempt = 0; attempt <= options.max_refinements; ++attempt, ++teeth) {
    Network candidate = monomial_net(alpha, teeth, options.levels);
    std::vector<double> x(alpha.size(), 0.0);
    std::vector<std::size_t> idx(vars.size(), 0);
    double worst = 0.0;
    while (true) {
      for (std::size_t v = 0; v < vars.size(); ++v)
        x[vars[v]] = static_cast<double>(idx[v]) / static_cast<double>(per_axis - 1);
      double exact = 1.0;
      for (std::size_t i = 0; i < alpha.size(); ++i) exact *= std::pow(x[i], static_cast<int>(alpha[i]));
      worst = std::max(worst, std::abs(candidate.evaluate(x)[0] - exact));
      std::size_t v = 0;
      while (v < idx.size() && idx[v] == per_axis - 1) idx[v++] = 0;
      if (v == idx.size()) break;
      ++idx[v];
    }
    if (worst <= epsilon) return MulNet{std::move(candidate), teeth, worst};
  }
  throw ConvergenceError("mul_net: grid error stayed above epsilon after " +
                         std::to_string(options.max_refinements) + " refinements");
}

}  // namespace lowdim::approx
