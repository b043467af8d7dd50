#include "lowdim/approx/holder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lowdim/common/error.hpp"

namespace lowdim::approx {
namespace {

constexpr double kPi = std::numbers::pi;

void check_point(const HolderTarget& t, std::span<const double> x) {
  if (x.size() != t.dim) throw DomainError(t.name + ": expected a point of dimension " + std::to_string(t.dim));
}

// Fills alpha[pos..] with every composition of `remaining` into dim - pos parts.
void compositions(std::size_t pos, unsigned remaining, MultiIndex& alpha, std::vector<MultiIndex>& out) {
  if (pos + 1 == alpha.size()) {
    alpha[pos] = remaining;
    out.push_back(alpha);
    return;
  }
  for (unsigned a = remaining + 1; a-- > 0;) {
    alpha[pos] = a;
    compositions(pos + 1, remaining - a, alpha, out);
  }
}

// Physicists' Hermite polynomial H_n(u).
double hermite(unsigned n, double u) {
  double prev = 1.0, cur = 2.0 * u;
  if (n == 0) return prev;
  for (unsigned k = 1; k < n; ++k) {
    const double next = 2.0 * u * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

unsigned order(const MultiIndex& alpha) {
  unsigned s = 0;
  for (unsigned a : alpha) s += a;
  return s;
}

double factorial(const MultiIndex& alpha) {
  double f = 1.0;
  for (unsigned a : alpha)
    for (unsigned k = 2; k <= a; ++k) f *= k;
  return f;
}

std::vector<MultiIndex> multi_indices(std::size_t dim, unsigned max_order) {
  if (dim == 0) throw DomainError("multi_indices: dimension must be positive");
  std::vector<MultiIndex> out;
  MultiIndex alpha(dim, 0);
  for (unsigned k = 0; k <= max_order; ++k) compositions(0, k, alpha, out);
  return out;
}

unsigned holder_degree(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("smoothness beta must be positive and finite");
  return static_cast<unsigned>(std::ceil(beta)) - 1;
}

HolderTarget sincos_target() {
  HolderTarget t;
  t.name = "sincos";
  t.dim = 2;
  t.beta = 2.0;
  // sup|f| = 1/2; the gradient of d1 f (or d2 f) has l1 norm
  // (pi^2/2)|sin(pi x1 +- pi x2)| <= pi^2/2, the sup-norm Lipschitz constant.
  t.bound = 0.5 + kPi * kPi / 2.0;
  t.value = [](std::span<const double> x) { return 0.5 * std::sin(kPi * x[0]) * std::cos(kPi * x[1]); };
  t.deriv = [](const MultiIndex& a, std::span<const double> x) {
    return 0.5 * std::pow(kPi, a[0] + a[1]) * std::sin(kPi * x[0] + a[0] * kPi / 2) *
           std::cos(kPi * x[1] + a[1] * kPi / 2);
  };
  return t;
}

HolderTarget sine_target(std::size_t dim) {
  if (dim == 0) throw DomainError("sine_target: dimension must be positive");
  HolderTarget t;
  t.name = "sine";
  t.dim = dim;
  t.beta = 2.0;
  t.bound = 1.0 + 4.0 * kPi * kPi;
  t.value = [](std::span<const double> x) { return std::sin(2 * kPi * x[0]); };
  t.deriv = [](const MultiIndex& a, std::span<const double> x) {
    for (std::size_t i = 1; i < a.size(); ++i)
      if (a[i] != 0) return 0.0;
    return std::pow(2 * kPi, a[0]) * std::sin(2 * kPi * x[0] + a[0] * kPi / 2);
  };
  return t;
}

HolderTarget gaussian_bump_target(std::span<const double> center) {
  if (center.empty()) throw DomainError("gaussian_bump_target: empty centre");
  HolderTarget t;
  t.name = "bump";
  t.dim = center.size();
  t.beta = 2.0;
  // sup|f| = 1; |d_jj f| <= 2 and |d_ij f| <= 4|u v| e^{-u^2-v^2} <= 2/e.
  t.bound = 3.0 + (static_cast<double>(t.dim) - 1.0) * 2.0 / std::numbers::e;
  std::vector<double> c(center.begin(), center.end());
  t.value = [c](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += (x[i] - c[i]) * (x[i] - c[i]);
    return std::exp(-s);
  };
  t.deriv = [c](const MultiIndex& a, std::span<const double> x) {
    double p = 1.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double u = x[i] - c[i];
      p *= ((a[i] % 2) ? -1.0 : 1.0) * hermite(a[i], u) * std::exp(-u * u);
    }
    return p;
  };
  return t;
}

HolderTarget product_target(std::size_t dim) {
  if (dim < 2) throw DomainError("product_target: dimension must be at least 2");
  HolderTarget t;
  t.name = "product";
  t.dim = dim;
  t.beta = 2.0;
  t.bound = 2.0;
  t.value = [](std::span<const double> x) { return x[0] * x[1]; };
  t.deriv = [](const MultiIndex& a, std::span<const double> x) {
    for (std::size_t i = 2; i < a.size(); ++i)
      if (a[i] != 0) return 0.0;
    if (a[0] > 1 || a[1] > 1) return 0.0;
    return (a[0] ? 1.0 : x[0]) * (a[1] ? 1.0 : x[1]);
  };
  return t;
}

HolderTarget constant_target(std::size_t dim, double c, double beta) {
  if (dim == 0) throw DomainError("constant_target: dimension must be positive");
  HolderTarget t;
  t.name = c == 0.0 ? "zero" : "constant";
  t.dim = dim;
  t.beta = beta;
  t.bound = std::max(1.0, std::abs(c));
  t.value = [c](std::span<const double>) { return c; };
  t.deriv = [c](const MultiIndex& a, std::span<const double>) { return order(a) == 0 ? c : 0.0; };
  return t;
}

HolderTarget named_target(const std::string& name, std::size_t dim) {
  if (name == "sincos") {
    if (dim != 2) throw DomainError("target sincos needs dimension 2");
    return sincos_target();
  }
  if (name == "sine") return sine_target(dim);
  if (name == "bump") return gaussian_bump_target(std::vector<double>(dim, 0.5));
  if (name == "product") return product_target(dim);
  if (name == "zero") return constant_target(dim, 0.0);
  throw DomainError("unknown target '" + name + "' (expected sincos, sine, bump, product or zero)");
}

double max_derivative(const HolderTarget& target, const PointCloud& points) {
  const auto alphas = multi_indices(target.dim, holder_degree(target.beta));
  double m = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    check_point(target, points[i]);
    for (const auto& a : alphas) m = std::max(m, std::abs(target.deriv(a, points[i])));
  }
  return m;
}

double holder_norm_estimate(const HolderTarget& target, const PointCloud& points) {
  const unsigned k = holder_degree(target.beta);
  const double exponent = target.beta - k;
  double low = 0.0, top = 0.0;
  for (const auto& a : multi_indices(target.dim, k)) {
    if (order(a) < k) {
      for (std::size_t i = 0; i < points.size(); ++i) low = std::max(low, std::abs(target.deriv(a, points[i])));
      continue;
    }
    std::vector<double> d(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      check_point(target, points[i]);
      d[i] = target.deriv(a, points[i]);
    }
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        double dist = 0.0;
        for (std::size_t l = 0; l < target.dim; ++l) dist = std::max(dist, std::abs(points[i][l] - points[j][l]));
        if (dist > 0.0) top = std::max(top, std::abs(d[i] - d[j]) / std::pow(dist, exponent));
      }
  }
  return low + top;
}

}  // namespace lowdim::approx
