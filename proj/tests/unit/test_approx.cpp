#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lowdim/approx/builder.hpp"
#include "lowdim/approx/holder.hpp"
#include "lowdim/approx/multiplication.hpp"
#include "lowdim/approx/polynomial.hpp"
#include "lowdim/approx/taylor.hpp"
#include "lowdim/common/error.hpp"
#include "lowdim/geometry/cover.hpp"
#include "lowdim/geometry/support.hpp"
#include "lowdim/net/calculus.hpp"

using namespace lowdim;
using namespace lowdim::approx;
using lowdim::net::Network;

namespace {

constexpr double kPi = std::numbers::pi;

double eval1(const Network& net, std::vector<double> x) { return net.evaluate(x)[0]; }

// x^2 on [0,1] through polynomials with a hand-written derivative table.
HolderTarget square_target() {
  HolderTarget t;
  t.name = "square";
  t.dim = 1;
  t.beta = 2.0;
  t.bound = 2.0;
  t.value = [](std::span<const double> x) { return x[0] * x[0]; };
  t.deriv = [](const MultiIndex& a, std::span<const double> x) {
    switch (a[0]) {
      case 0: return x[0] * x[0];
      case 1: return 2.0 * x[0];
      case 2: return 2.0;
      default: return 0.0;
    }
  };
  return t;
}

// Piecewise-linear interpolant of x^2 on the grid of spacing h.
double interp_square(double x, double h) {
  const double k = std::min(std::floor(x / h), std::round(1.0 / h) - 1.0);
  const double a = k * h, b = a + h;
  return a * a + (x - a) * (b * b - a * a) / h;
}

PointCloud circle(std::size_t n, std::uint64_t seed) {
  geometry::SupportSpec spec{.kind = geometry::SupportKind::kSphere, .intrinsic_dim = 1, .ambient_dim = 2};
  return geometry::generate_support(spec, n, seed);
}

double brute_sup(const Network& net, const HolderTarget& t, const PointCloud& pts) {
  double m = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<double> x(pts[i].begin(), pts[i].end());
    m = std::max(m, std::abs(net.evaluate(x)[0] - t.value(x)));
  }
  return m;
}

}  // namespace

TEST(MultiIndex, EnumerationAndFactorial) {
  const auto all = multi_indices(2, 2);
  const std::vector<MultiIndex> want{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  EXPECT_EQ(all, want);
  EXPECT_EQ(multi_indices(3, 3).size(), 20u);  // C(6, 3)
  EXPECT_EQ(order({2, 0, 3}), 5u);
  EXPECT_EQ(factorial({2, 0, 3}), 12.0);
  EXPECT_THROW(multi_indices(0, 2), DomainError);
}

TEST(MultiIndex, DegreeIsLargestIntegerStrictlyBelowBeta) {
  EXPECT_EQ(holder_degree(0.5), 0u);
  EXPECT_EQ(holder_degree(1.0), 0u);
  EXPECT_EQ(holder_degree(1.5), 1u);
  EXPECT_EQ(holder_degree(2.0), 1u);
  EXPECT_EQ(holder_degree(3.2), 3u);
  EXPECT_THROW(holder_degree(0.0), DomainError);
}

TEST(Targets, DerivativeOraclesMatchFiniteDifferences) {
  const std::vector<double> c{0.3, 0.7, 0.5};
  const std::vector<HolderTarget> targets{sincos_target(), sine_target(3), gaussian_bump_target(c), product_target(3)};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (const auto& t : targets) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> x(t.dim);
      for (double& v : x) v = u(rng);
      for (std::size_t l = 0; l < t.dim; ++l) {
        MultiIndex e(t.dim, 0);
        e[l] = 1;
        auto xp = x, xm = x;
        xp[l] += 1e-6;
        xm[l] -= 1e-6;
        EXPECT_NEAR(t.deriv(e, x), (t.value(xp) - t.value(xm)) / 2e-6, 1e-6) << t.name;
      }
      EXPECT_DOUBLE_EQ(t.deriv(MultiIndex(t.dim, 0), x), t.value(x));
    }
  }
}

TEST(Targets, NormBoundDominatesEstimate) {
  geometry::SupportSpec spec{.kind = geometry::SupportKind::kSphere, .intrinsic_dim = 1, .ambient_dim = 2};
  const auto pts = geometry::generate_support(spec, 400, 2);
  for (const auto& t : {sincos_target(), sine_target(2), product_target(2), named_target("bump", 2)}) {
    EXPECT_LE(max_derivative(t, pts), t.bound) << t.name;
    EXPECT_LE(holder_norm_estimate(t, pts), t.bound) << t.name;
  }
  EXPECT_THROW(named_target("sincos", 3), DomainError);
  EXPECT_THROW(named_target("nope", 2), DomainError);
}

TEST(Taylor, SquareIsItsOwnExpansion) {
  const std::vector<double> c{0.5};
  const Polynomial p = taylor_expand(square_target(), c, 2u);
  EXPECT_DOUBLE_EQ(p.coeffs.at({0}), 0.25);
  EXPECT_DOUBLE_EQ(p.coeffs.at({1}), 1.0);
  EXPECT_DOUBLE_EQ(p.coeffs.at({2}), 1.0);
  for (double x = 0.0; x <= 1.0; x += 0.05) EXPECT_NEAR(p(std::vector<double>{x}), x * x, 1e-14);
}

TEST(Taylor, ConstantHasOnlyZerothCoefficient) {
  const auto t = constant_target(3, -0.75);
  const std::vector<double> c{0.1, 0.2, 0.9};
  const Polynomial p = taylor_expand(t, c);
  EXPECT_EQ(p.coeffs.at({0, 0, 0}), -0.75);
  for (const auto& [alpha, v] : p.coeffs)
    if (order(alpha) > 0) EXPECT_EQ(v, 0.0);
}

TEST(Taylor, SineRemainderBound) {
  const auto t = sine_target(1);
  const std::vector<double> c{0.37};
  const Polynomial p = taylor_expand(t, c);
  EXPECT_EQ(p.degree(), holder_degree(t.beta));
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    const double lhs = std::abs(std::sin(2 * kPi * x) - p(std::vector<double>{x}));
    const double rhs = std::pow(1.0, t.beta) * t.bound * std::pow(std::abs(x - c[0]), t.beta);
    EXPECT_LE(lhs, rhs + 1e-12);
  }
}

TEST(Taylor, MultivariateRemainderBound) {
  const auto t = sincos_target();
  const std::vector<double> c{0.6, 0.25};
  const Polynomial p = taylor_expand(t, c);
  for (int i = 0; i <= 30; ++i)
    for (int j = 0; j <= 30; ++j) {
      const std::vector<double> x{i / 30.0, j / 30.0};
      const double h = std::max(std::abs(x[0] - c[0]), std::abs(x[1] - c[1]));
      EXPECT_LE(std::abs(t.value(x) - p(x)), std::pow(2.0, t.beta) * t.bound * std::pow(h, t.beta) + 1e-12);
    }
}

TEST(Taylor, RejectsBadCentre) {
  const std::vector<double> out{1.2};
  EXPECT_THROW(taylor_expand(square_target(), out), DomainError);
  HolderTarget broken = square_target();
  broken.deriv = [](const MultiIndex&, std::span<const double>) { return std::nan(""); };
  const std::vector<double> c{0.5};
  EXPECT_THROW(taylor_expand(broken, c), DomainError);
}

TEST(Taylor, RebaseMatchesShiftedForm) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0), coef(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial p;
    p.center = {u(rng), u(rng), u(rng)};
    for (const auto& a : multi_indices(3, 3)) p.coeffs[a] = coef(rng);
    const auto flat = rebase_to_origin(p);
    for (int k = 0; k < 20; ++k) {
      const std::vector<double> x{u(rng), u(rng), u(rng)};
      double s = 0.0;
      for (const auto& [g, c] : flat) s += c * monomial(g, x);
      EXPECT_NEAR(s, p(x), 1e-9);
    }
  }
}

TEST(Square, IsTheGridInterpolant) {
  for (std::size_t q : {2u, 3u, 5u})
    for (std::size_t r : {1u, 2u, 3u}) {
      const Network net = square_net(q, r);
      EXPECT_EQ(net.depth(), r + 1);
      const double h = std::pow(static_cast<double>(q), -static_cast<double>(r));
      double worst = 0.0;
      for (int i = 0; i <= 2000; ++i) {
        const double x = i / 2000.0;
        const double y = eval1(net, {x});
        EXPECT_NEAR(y, interp_square(x, h), 1e-11) << "q=" << q << " r=" << r << " x=" << x;
        worst = std::max(worst, std::abs(y - x * x));
      }
      EXPECT_LE(worst, square_error_bound(q, r) + 1e-12);
      EXPECT_NEAR(square_error_bound(q, r), h * h / 4, 1e-15);
    }
  EXPECT_THROW(square_net(1, 2), DomainError);
  EXPECT_THROW(square_net(2, 0), DomainError);
}

TEST(Product, ErrorWithinBound) {
  const std::size_t q = 3, r = 2;
  const Network net = product_net(q, r);
  EXPECT_EQ(net.depth(), r + 4);
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j) {
      const double a = i / 100.0, b = j / 100.0;
      EXPECT_LE(std::abs(eval1(net, {a, b}) - a * b), 3 * square_error_bound(q, r) + 1e-12);
    }
}

TEST(MulNet, EmptyProductIsConstantOne) {
  const MulNet m = mul_net({0, 0}, 0.1);
  EXPECT_EQ(m.grid_error, 0.0);
  EXPECT_EQ(eval1(m.net, {0.3, 0.9}), 1.0);
  EXPECT_EQ(eval1(m.net, {0.0, 0.0}), 1.0);
}

TEST(MulNet, DegreeOneIsExact) {
  const MulNet m = mul_net({1}, 0.1);
  EXPECT_EQ(m.grid_error, 0.0);
  for (double x : {0.0, 0.25, 0.8, 1.0}) EXPECT_EQ(eval1(m.net, {x}), x);
}

TEST(MulNet, BilinearOnDenseGrid) {
  const MulNet m = mul_net({1, 1}, 0.05);
  double worst = 0.0;
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j) {
      const double a = i / 200.0, b = j / 200.0;
      worst = std::max(worst, std::abs(eval1(m.net, {a, b}) - a * b));
    }
  EXPECT_LE(worst, 0.05);
}

TEST(MulNet, HigherOrderMonomials) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const MultiIndex& alpha : {MultiIndex{3, 0}, MultiIndex{1, 2, 1}, MultiIndex{2, 2}}) {
    const MulNet m = mul_net(alpha, 0.01);
    const auto k = order(alpha);
    const auto t = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(k))));
    EXPECT_EQ(m.net.depth(), 1 + t * (3 + 4));
    for (int i = 0; i < 3000; ++i) {
      std::vector<double> x(alpha.size());
      for (double& v : x) v = u(rng);
      EXPECT_LE(std::abs(eval1(m.net, x) - monomial(alpha, x)), 0.01);
    }
  }
}

TEST(MulNet, DepthDoesNotGrowWithAccuracy) {
  const auto coarse = mul_net({1, 1}, 0.1), fine = mul_net({1, 1}, 1e-4);
  EXPECT_EQ(coarse.net.depth(), fine.net.depth());
  EXPECT_GE(fine.teeth, coarse.teeth);
  EXPECT_THROW(mul_net({1, 1}, 1.5), DomainError);
  EXPECT_THROW(mul_net({1, 1}, 0.0), DomainError);
}

TEST(PolNet, ConstantPolynomial) {
  Polynomial p;
  p.center = {0.4, 0.4};
  p.coeffs[{0, 0}] = 1.75;
  const PolNet pn = pol_net(std::vector<Polynomial>{p}, 0.05);
  EXPECT_EQ(pn.net.output_dim(), 1u);
  EXPECT_NEAR(eval1(pn.net, {0.1, 0.9}), 1.75, 1e-12);
  EXPECT_NEAR(eval1(pn.net, {0.7, 0.3}), 1.75, 1e-12);
}

TEST(PolNet, TwoLinearCentres) {
  Polynomial a, b;
  a.center = {0.25, 0.25};
  a.coeffs = {{{0, 0}, 1.0}, {{1, 0}, 2.0}, {{0, 1}, -1.0}};
  b.center = {0.75, 0.5};
  b.coeffs = {{{0, 0}, -0.5}, {{1, 0}, 0.0}, {{0, 1}, 3.0}};
  const std::vector<Polynomial> polys{a, b};
  const PolNet pn = pol_net(polys, 0.05);
  ASSERT_EQ(pn.net.output_dim(), 2u);
  for (int i = 0; i <= 50; ++i)
    for (int j = 0; j <= 50; ++j) {
      const std::vector<double> x{i / 50.0, j / 50.0};
      const auto y = pn.net.evaluate(x);
      EXPECT_LE(std::abs(y[0] - a(x)), 0.05);
      EXPECT_LE(std::abs(y[1] - b(x)), 0.05);
    }
}

TEST(PolNet, QuadraticTaylorPolynomials) {
  const auto t = sincos_target();
  std::vector<Polynomial> polys;
  for (double c : {0.2, 0.5, 0.8}) polys.push_back(taylor_expand(t, std::vector<double>{c, 1 - c}, 2u));
  const PolNet pn = pol_net(polys, 0.02);
  EXPECT_GT(pn.teeth, 0u);
  EXPECT_EQ(pn.monomial_count, 6u);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const std::vector<double> x{u(rng), u(rng)};
    const auto y = pn.net.evaluate(x);
    for (std::size_t l = 0; l < polys.size(); ++l) EXPECT_LE(std::abs(y[l] - polys[l](x)), 0.02);
  }
  EXPECT_THROW(pol_net(std::vector<Polynomial>{}, 0.1), DomainError);
}

TEST(Simul, OneCubeGatesConstant) {
  const double gamma = 0.25, m = 1.0;
  geometry::HypercubeCover cover(gamma, 2, {{1, 2}});  // cube [0.25,0.5] x [0.5,0.75]
  Polynomial p;
  p.center = cover.center(0);
  p.coeffs[{0, 0}] = 1.0;
  const PolNet pn = pol_net(std::vector<Polynomial>{p}, 0.1);
  const Network net = approx::simul_net(cover, pn.net, m);
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j) {
      const std::vector<double> x{i / 100.0, j / 100.0};
      const double y = eval1(net, x);
      const double dx = std::max(std::abs(x[0] - 0.375), std::abs(x[1] - 0.625));
      if (dx <= gamma / 2) EXPECT_NEAR(y, 1.0, 1e-12);
      if (dx >= gamma) EXPECT_EQ(y, 0.0);
      EXPECT_GE(y, 0.0);
      EXPECT_LE(y, 1.0 + 1e-12);
    }
}

TEST(Simul, OnlyNeighbouringCubesFire) {
  const auto pts = circle(2000, 6);
  const double gamma = 0.125, m = 1.0;
  const auto cover = geometry::grid_cover(pts, gamma);
  std::vector<Polynomial> polys;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    Polynomial p;
    p.center = cover.center(i);
    p.coeffs[{0, 0}] = 1.0 + static_cast<double>(i % 3) * 0.5;
    polys.push_back(p);
  }
  const PolNet pn = pol_net(polys, 0.1);
  const Network net = approx::simul_net(cover, pn.net, m);
  for (std::size_t k = 0; k < pts.size(); k += 7) {
    const auto y = net.evaluate(pts[k]);
    const auto own = *cover.index_of(cover.locate(pts[k]));
    const auto near = cover.neighbours(own);
    for (std::size_t i = 0; i < y.size(); ++i) {
      EXPECT_GE(y[i], 0.0);
      EXPECT_LE(y[i], 2 * m + 2);
      if (!std::binary_search(near.begin(), near.end(), i)) EXPECT_EQ(y[i], 0.0);
    }
    EXPECT_NEAR(y[own], polys[own].coeffs.at({0, 0}), 1e-9);
  }
  EXPECT_THROW(approx::simul_net(cover, net::identity_net(2, 1), m), DomainError);
}

TEST(Builder, AutoGamma) {
  EXPECT_NEAR(auto_gamma(2, 2.0, 3.0, 0.1), 0.5 * std::sqrt(0.1 / 9.0), 1e-15);
  EXPECT_EQ(auto_gamma(1, 1.0, 0.1, 0.9), 1.0);
  EXPECT_THROW(auto_gamma(0, 2.0, 1.0, 0.1), DomainError);
}

TEST(Builder, ZeroTarget) {
  const auto pts = circle(3000, 7);
  const auto t = named_target("zero", 2);
  const auto a = build_approximator(t, pts, 1.0, 0.1);
  EXPECT_LE(brute_sup(a.network, t, pts), 0.1);
}

TEST(Builder, CircleSincosWithinEpsilon) {
  const auto pts = circle(10000, 8);
  const auto t = sincos_target();
  std::size_t depth = 0, prev_w = 0;
  for (double eps : {0.4, 0.2, 0.1}) {
    const auto a = build_approximator(t, pts, 1.0, eps);
    EXPECT_LE(a.spec.empirical_sup_error, eps);
    EXPECT_NEAR(brute_sup(a.network, t, pts), a.spec.empirical_sup_error, 1e-12);
    EXPECT_EQ(a.spec.built, net::complexity(a.network));
    EXPECT_NEAR(a.spec.gamma, auto_gamma(2, t.beta, t.bound, eps), 1e-15);
    if (depth == 0) depth = a.spec.built.depth;
    EXPECT_EQ(a.spec.built.depth, depth);
    EXPECT_GE(a.spec.built.param_count, prev_w);
    prev_w = a.spec.built.param_count;
    // A fresh draw from the same circle.
    const auto fresh = circle(2000, 80);
    EXPECT_LE(brute_sup(a.network, t, fresh), 2 * eps);
  }
}

TEST(Builder, OutputStaysInClipRange) {
  const auto pts = circle(2000, 9);
  const auto t = sincos_target();
  const auto a = build_approximator(t, pts, 1.0, 0.2);
  for (int i = 0; i <= 60; ++i)
    for (int j = 0; j <= 60; ++j) {
      const double y = eval1(a.network, {i / 60.0, j / 60.0});
      EXPECT_GE(y, -t.bound - 1e-12);
      EXPECT_LE(y, t.bound + 1e-12);
    }
}

TEST(Builder, QuadraticTaylorUsesProducts) {
  const auto pts = circle(3000, 10);
  const auto t = sincos_target();
  BuildOptions opts;
  opts.taylor_degree = 2;
  const auto a = build_approximator(t, pts, 1.0, 0.2, opts);
  EXPECT_GT(a.spec.teeth, 0u);
  EXPECT_LE(brute_sup(a.network, t, pts), 0.2);
}

// Two targets that agree for x1 <= 0.6 produce the same output wherever the
// only cubes in reach lie in that half.
TEST(Builder, ChangesFarAwayDoNotLeak) {
  auto make = [](double amp) {
    HolderTarget t = product_target(2);
    t.name = "bent";
    t.bound = 3.0;
    t.value = [amp](std::span<const double> x) {
      const double r = std::max(0.0, x[0] - 0.6);
      return x[0] * x[1] + amp * r * r;
    };
    t.deriv = [amp](const MultiIndex& a, std::span<const double> x) {
      const double r = std::max(0.0, x[0] - 0.6);
      if (a == MultiIndex{0, 0}) return x[0] * x[1] + amp * r * r;
      if (a == MultiIndex{1, 0}) return x[1] + 2 * amp * r;
      if (a == MultiIndex{0, 1}) return x[0];
      return 0.0;
    };
    return t;
  };
  const auto pts = circle(4000, 11);
  const double eps = 0.2;
  const auto a = build_approximator(make(0.0), pts, 1.0, eps);
  const auto b = build_approximator(make(0.5), pts, 1.0, eps);
  ASSERT_EQ(a.spec.gamma, b.spec.gamma);
  const double reach = 0.6 - 2 * a.spec.gamma;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i][0] >= reach) continue;
    ++checked;
    EXPECT_LE(std::abs(a.network.evaluate(pts[i])[0] - b.network.evaluate(pts[i])[0]), eps);
  }
  EXPECT_GT(checked, 1000u);
}

TEST(Builder, RejectsBadArguments) {
  const auto pts = circle(100, 12);
  const auto t = sincos_target();
  EXPECT_THROW(build_approximator(t, pts, 1.0, 0.0), DomainError);
  EXPECT_THROW(build_approximator(t, pts, 1.0, 1.0), DomainError);
  EXPECT_THROW(build_approximator(t, PointCloud(2), 1.0, 0.1), DomainError);
  EXPECT_THROW(build_approximator(sine_target(3), pts, 1.0, 0.1), DomainError);
}

TEST(SupError, Examples) {
  PointCloud pts(1, {0.0, 0.3, 0.6, 1.0});
  const Network ident = net::identity_net(1, 1);
  const auto same = verify_sup_error(ident, [](std::span<const double> x) { return x[0]; }, pts);
  EXPECT_EQ(same.value, 0.0);

  const Network zero({net::Layer{net::Matrix(1, 1, {0.0}), {0.5}}});
  const auto shifted = verify_sup_error(zero, [](std::span<const double>) { return 0.75; }, pts);
  EXPECT_DOUBLE_EQ(shifted.value, 0.25);

  const auto brute = verify_sup_error(ident, [](std::span<const double> x) { return x[0] * x[0]; }, pts);
  double want = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double e = std::abs(pts[i][0] - pts[i][0] * pts[i][0]);
    if (e > want) want = e, arg = i;
  }
  EXPECT_EQ(brute.value, want);
  EXPECT_EQ(brute.index, arg);
  EXPECT_EQ(brute.point, (std::vector<double>{pts[arg][0]}));
  EXPECT_THROW(verify_sup_error(ident, [](std::span<const double>) { return 0.0; }, PointCloud(1)), DomainError);
}
