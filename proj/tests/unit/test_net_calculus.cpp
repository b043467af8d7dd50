#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "lowdim/common/error.hpp"
#include "lowdim/net/calculus.hpp"
#include "lowdim/net/network.hpp"

using namespace lowdim;
using namespace lowdim::net;

namespace {

Network random_net(std::mt19937_64& rng, const std::vector<std::size_t>& widths, double sparsity = 0.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::bernoulli_distribution zero(sparsity);
  std::vector<Layer> layers;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    Matrix a(widths[l + 1], widths[l]);
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = zero(rng) ? 0.0 : g(rng);
    std::vector<double> b(widths[l + 1]);
    for (double& v : b) v = zero(rng) ? 0.0 : g(rng);
    layers.push_back({std::move(a), std::move(b)});
  }
  return Network(std::move(layers));
}

std::vector<std::size_t> random_widths(std::mt19937_64& rng, std::size_t in, std::size_t out, std::size_t depth) {
  std::uniform_int_distribution<std::size_t> w(1, 5);
  std::vector<std::size_t> widths{in};
  for (std::size_t l = 1; l < depth; ++l) widths.push_back(w(rng));
  widths.push_back(out);
  return widths;
}

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

double cut_oracle(const std::vector<double>& x, double y, const std::vector<double>& c, double gamma, double m) {
  const double s = 2 * m + 2;
  double sum = 0.0;
  for (std::size_t l = 0; l < c.size(); ++l) {
    const double dist = std::abs(x[l] - c[l]);
    sum += std::clamp(2.0 - 2.0 * dist / gamma, 0.0, 1.0);
  }
  return s * std::max(0.0, sum + y / s - static_cast<double>(c.size()));
}

}  // namespace

TEST(Concat, IdentityWithIdentity) {
  const Network net = concat(identity_net(1, 2), identity_net(1, 2));
  EXPECT_EQ(net.depth(), 4u);
  for (double x : {-3.5, -1.0, 0.0, 0.25, 7.0}) EXPECT_DOUBLE_EQ(net.evaluate(std::vector<double>{x})[0], x);
}

TEST(Concat, RandomPairsMatchComposition) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> dim(1, 4), depth(1, 3);
  for (int pair = 0; pair < 500; ++pair) {
    const std::size_t in = dim(rng), mid = dim(rng), out = dim(rng);
    const Network first = random_net(rng, random_widths(rng, in, mid, depth(rng)), 0.2);
    const Network second = random_net(rng, random_widths(rng, mid, out, depth(rng)), 0.2);
    const Network joined = concat(second, first);
    const Complexity c1 = complexity(first), c2 = complexity(second), c = complexity(joined);
    EXPECT_LE(c.param_count, 2 * c1.param_count + 2 * c2.param_count);
    EXPECT_EQ(c.depth, c1.depth + c2.depth);
    EXPECT_EQ(c.max_weight, std::max(c1.max_weight, c2.max_weight));
    for (int k = 0; k < 100; ++k) {
      const auto x = random_vec(rng, in);
      const auto want = second.evaluate(first.evaluate(x));
      const auto got = joined.evaluate(x);
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t i = 0; i < got.size(); ++i) ASSERT_NEAR(got[i], want[i], 1e-9);
    }
  }
}

TEST(Concat, ChainDepthAddsAndScaleIsMax) {
  std::mt19937_64 rng(2);
  std::vector<Network> nets;
  std::size_t total_depth = 0;
  double max_b = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    nets.push_back(random_net(rng, random_widths(rng, 2, 2, k + 1)));
    total_depth += k + 1;
    max_b = std::max(max_b, complexity(nets.back()).max_weight);
  }
  const Network chain = concat_chain(nets);
  EXPECT_EQ(chain.depth(), total_depth);
  EXPECT_EQ(complexity(chain).max_weight, max_b);
  const auto x = random_vec(rng, 2);
  std::vector<double> want = x;
  for (auto it = nets.rbegin(); it != nets.rend(); ++it) want = it->evaluate(want);
  const auto got = chain.evaluate(x);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(got[i], want[i], 1e-9);
}

TEST(Concat, DimensionMismatch) {
  EXPECT_THROW(concat(identity_net(2, 1), identity_net(3, 1)), DimensionMismatch);
  EXPECT_THROW(concat_chain(std::vector<Network>{}), DomainError);
}

TEST(ParallelShared, TwoIdentitiesDuplicate) {
  const std::vector<Network> nets{identity_net(2, 3), identity_net(2, 3)};
  const Network net = parallel_shared_input(nets);
  const auto y = net.evaluate(std::vector<double>{-1.5, 2.0});
  EXPECT_EQ(y, (std::vector<double>{-1.5, 2.0, -1.5, 2.0}));
}

TEST(ParallelShared, LawsOnRandomTuples) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> count(2, 4), depth(1, 4), out(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = count(rng), l = depth(rng);
    std::vector<Network> nets;
    std::size_t w_sum = 0;
    double b_max = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      nets.push_back(random_net(rng, random_widths(rng, 3, out(rng), l), 0.3));
      w_sum += complexity(nets.back()).param_count;
      b_max = std::max(b_max, complexity(nets.back()).max_weight);
    }
    const Network par = parallel_shared_input(nets);
    const Complexity c = complexity(par);
    ASSERT_EQ(c.param_count, w_sum);
    ASSERT_EQ(c.depth, l);
    ASSERT_EQ(c.max_weight, b_max);
    for (int j = 0; j < 5; ++j) {
      const auto x = random_vec(rng, 3);
      const auto got = par.evaluate(x);
      std::size_t off = 0;
      for (const Network& n : nets) {
        const auto part = n.evaluate(x);
        for (double v : part) ASSERT_NEAR(got[off++], v, 1e-12);
      }
      ASSERT_EQ(off, got.size());
    }
  }
}

TEST(ParallelShared, RejectsUnequalDepthOrInput) {
  const std::vector<Network> depths{identity_net(2, 2), identity_net(2, 3)};
  try {
    parallel_shared_input(depths);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("identity"), std::string::npos);
  }
  const std::vector<Network> inputs{identity_net(2, 2), identity_net(3, 2)};
  EXPECT_THROW(parallel_shared_input(inputs), DomainError);
}

TEST(ParallelSplit, IdentitiesPassThrough) {
  const std::vector<Network> nets{identity_net(1, 2), identity_net(1, 2)};
  const Network net = parallel_split_input(nets);
  EXPECT_EQ(net.evaluate(std::vector<double>{-4.0, 9.0}), (std::vector<double>{-4.0, 9.0}));
}

TEST(ParallelSplit, OffDiagonalBlocksAreZero) {
  std::mt19937_64 rng(4);
  const std::vector<Network> nets{random_net(rng, {2, 3, 1}), random_net(rng, {3, 2, 2})};
  const Network net = parallel_split_input(nets);
  const auto& l0 = net.layers()[0].weight;
  ASSERT_EQ(l0.rows(), 5u);
  ASSERT_EQ(l0.cols(), 5u);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 2; c < 5; ++c) EXPECT_EQ(l0(r, c), 0.0);
  for (std::size_t r = 3; r < 5; ++r)
    for (std::size_t c = 0; c < 2; ++c) EXPECT_EQ(l0(r, c), 0.0);
  const auto& l1 = net.layers()[1].weight;
  for (std::size_t c = 3; c < 5; ++c) EXPECT_EQ(l1(0, c), 0.0);
  for (std::size_t r = 1; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(l1(r, c), 0.0);
}

TEST(ParallelSplit, MatchesSeparateEvaluation) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<Network> nets{random_net(rng, random_widths(rng, 2, 2, 3)),
                                    random_net(rng, random_widths(rng, 1, 3, 3)),
                                    random_net(rng, random_widths(rng, 3, 1, 3))};
    const Network par = parallel_split_input(nets);
    std::size_t w_sum = 0;
    for (const Network& n : nets) w_sum += complexity(n).param_count;
    EXPECT_EQ(complexity(par).param_count, w_sum);
    const auto x = random_vec(rng, 6);
    const auto got = par.evaluate(x);
    std::vector<double> want;
    std::size_t off = 0;
    for (const Network& n : nets) {
      std::vector<double> part(x.begin() + off, x.begin() + off + n.input_dim());
      off += n.input_dim();
      for (double v : n.evaluate(part)) want.push_back(v);
    }
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
  }
  const std::vector<Network> bad{identity_net(1, 1), identity_net(1, 2)};
  EXPECT_THROW(parallel_split_input(bad), DomainError);
}

TEST(Identity, DepthFourOnNegativeInputs) {
  const Network net = identity_net(3, 4);
  const std::vector<double> x{-1.0, -0.5, 2.0};
  EXPECT_EQ(net.evaluate(x), x);
  EXPECT_EQ(complexity(net), (Complexity{24, 4, 1.0}));
}

TEST(Identity, DepthOneIsSingleAffineLayer) {
  const Network net = identity_net(3, 1);
  ASSERT_EQ(net.depth(), 1u);
  EXPECT_EQ(net.layers()[0].weight, Matrix::identity(3));
  EXPECT_EQ(net.layers()[0].bias, std::vector<double>(3, 0.0));
}

TEST(Identity, ParamCountFormula) {
  for (std::size_t dim = 1; dim <= 4; ++dim)
    for (std::size_t depth = 2; depth <= 5; ++depth)
      EXPECT_EQ(complexity(identity_net(dim, depth)).param_count, 2 * dim * depth);
  EXPECT_THROW(identity_net(0, 2), DomainError);
  EXPECT_THROW(identity_net(2, 0), DomainError);
}

TEST(Identity, PaddingKeepsFunction) {
  std::mt19937_64 rng(6);
  const Network net = random_net(rng, {2, 4, 2});
  const Network padded = concat(identity_net(2, 3), net);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_vec(rng, 2);
    const auto a = net.evaluate(x), b = padded.evaluate(x);
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(a[j], b[j], 1e-12);
  }
}

TEST(Max, TwoInputs) {
  EXPECT_EQ(max_net(2).evaluate(std::vector<double>{3.0, 5.0})[0], 5.0);
  EXPECT_EQ(max_net(2).evaluate(std::vector<double>{5.0, 3.0})[0], 5.0);
}

TEST(Max, ArityFiveComplexity) {
  const Network net = max_net(5);
  EXPECT_EQ(net.evaluate(std::vector<double>(5, 0.0))[0], 0.0);
  const Complexity c = complexity(net);
  EXPECT_EQ(c.depth, 9u);
  EXPECT_LE(c.param_count, 210u);
  EXPECT_EQ(c.max_weight, 1.0);
}

TEST(Max, ExactOnNonnegativeOrthant) {
  std::mt19937_64 rng(7);
  for (std::size_t s = 2; s <= 9; ++s) {
    const Network net = max_net(s);
    const auto t = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(s))));
    EXPECT_EQ(net.depth(), 2 * (t + 1) + 1);
    EXPECT_LE(complexity(net).param_count, 42 * s);
    for (int i = 0; i < 1000; ++i) {
      const auto x = random_vec(rng, s, 0.0, 10.0);
      ASSERT_NEAR(net.evaluate(x)[0], *std::max_element(x.begin(), x.end()), 1e-12);
    }
  }
  EXPECT_THROW(max_net(1), DomainError);
}

TEST(Cut, CentreReturnsY) {
  const std::vector<double> c{0.3, 0.6};
  const Network net = cut_net(c, 0.2, 1.0);
  EXPECT_NEAR(net.evaluate(std::vector<double>{0.3, 0.6, 1.0})[0], 1.0, 1e-12);
}

TEST(Cut, FarFromCubeIsZero) {
  const std::vector<double> c{0.5, 0.5, 0.5};
  const double gamma = 0.1, m = 2.0;
  const Network net = cut_net(c, gamma, m);
  for (double y : {0.0, 1.0, 3.0, 6.0}) {
    EXPECT_NEAR(net.evaluate(std::vector<double>{0.5, 0.5 + 1.01 * gamma, 0.5, y})[0], 0.0, 1e-12);
    EXPECT_NEAR(net.evaluate(std::vector<double>{0.0, 0.5, 1.0, y})[0], 0.0, 1e-12);
  }
}

// Four hinges per axis (weight and offset each), the two y rails, the gate
// row and the output scale: 8D + 3 + 4D + 3 + 1 nonzeros. This sits below the
// looser 24D + 6 count; the acceptance suite checks that figure separately.
TEST(Cut, ParamCountOfConstruction) {
  for (std::size_t d = 1; d <= 4; ++d) {
    const Network net = cut_net(std::vector<double>(d, 0.4), 0.15, 1.0);
    EXPECT_EQ(complexity(net).param_count, 12 * d + 7) << "D = " << d;
  }
}

TEST(Cut, DepthAndScale) {
  for (std::size_t d = 1; d <= 4; ++d) {
    const double gamma = 0.15, m = 1.5;
    const Network net = cut_net(std::vector<double>(d, 0.4), gamma, m);
    const Complexity c = complexity(net);
    EXPECT_EQ(c.depth, 3u);
    const double bound = std::max({1.0, 2 * m + 2, 1 / (2 * m + 2), static_cast<double>(d), 1 + gamma, 2 / gamma});
    EXPECT_LE(c.max_weight, bound);
    EXPECT_LE(c.param_count, 24 * d + 6);
  }
}

TEST(Cut, MatchesTrapezoidAndStaysInRange) {
  const std::vector<double> c{0.45, 0.55};
  const double gamma = 0.2, m = 1.0, s = 2 * m + 2;
  const Network net = cut_net(c, gamma, m);
  for (int i = 0; i <= 60; ++i)
    for (int j = 0; j <= 60; ++j)
      for (double y : {0.0, 0.5, 1.7, 3.0, s}) {
        const std::vector<double> x{0.15 + 0.01 * i, 0.25 + 0.01 * j};
        const double got = net.evaluate(std::vector<double>{x[0], x[1], y})[0];
        ASSERT_NEAR(got, cut_oracle(x, y, c, gamma, m), 1e-9);
        ASSERT_GE(got, -1e-12);
        ASSERT_LE(got, y + 1e-12);
        const bool inside = std::abs(x[0] - c[0]) <= gamma / 2 - 1e-12 && std::abs(x[1] - c[1]) <= gamma / 2 - 1e-12;
        if (inside) ASSERT_NEAR(got, y, 1e-9);
      }
}

TEST(Cut, RejectsBadArguments) {
  const std::vector<double> c{0.5};
  EXPECT_THROW(cut_net(c, 0.0, 1.0), DomainError);
  EXPECT_THROW(cut_net(c, -0.1, 1.0), DomainError);
  EXPECT_THROW(cut_net(std::vector<double>{}, 0.1, 1.0), DomainError);
}

TEST(Clip, ClampsAndShifts) {
  const Network net = clip_net(1.0);
  EXPECT_NEAR(net.evaluate(std::vector<double>{0.0})[0], -1.0, 1e-12);
  EXPECT_NEAR(net.evaluate(std::vector<double>{10.0})[0], 1.0, 1e-12);
  EXPECT_NEAR(net.evaluate(std::vector<double>{2.0})[0], 0.0, 1e-12);
}

TEST(Clip, MatchesClosedForm) {
  std::mt19937_64 rng(8);
  for (double m : {0.5, 1.0, 3.0, 17.5}) {
    const Network net = clip_net(m);
    const Complexity c = complexity(net);
    EXPECT_EQ(c.depth, 3u);
    EXPECT_LE(c.param_count, 12u);
    EXPECT_EQ(c.param_count, 6u);
    EXPECT_LE(c.max_weight, std::max(2 * m, 1.0));
    for (int i = 0; i < 1000; ++i) {
      const double x = random_vec(rng, 1, -5 * m, 5 * m)[0];
      ASSERT_NEAR(net.evaluate(std::vector<double>{x})[0], std::min(std::max(1.0, x), 2 * m + 1) - (m + 1), 1e-12);
    }
  }
  EXPECT_THROW(clip_net(0.0), DomainError);
}

TEST(Filter, KeepsLeadingBlockAndOneExtra) {
  const Network net = filter_net(2, 3, 1);
  EXPECT_EQ(net.evaluate(std::vector<double>{1, 2, 3, 4, 5}), (std::vector<double>{1, 2, 4}));
  EXPECT_EQ(net.depth(), 1u);
  EXPECT_EQ(complexity(net).param_count, 3u);
  for (double v : net.layers()[0].weight.data()) EXPECT_TRUE(v == 0.0 || v == 1.0);
}

TEST(Filter, ComposesWithIdentity) {
  std::mt19937_64 rng(9);
  const Network net = concat(filter_net(3, 4, 3), identity_net(7, 2));
  for (int i = 0; i < 100; ++i) {
    const auto x = random_vec(rng, 7);
    const auto y = net.evaluate(x);
    ASSERT_EQ(y.size(), 4u);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(y[j], x[j], 1e-12);
    EXPECT_NEAR(y[3], x[6], 1e-12);
  }
}

TEST(Filter, IndexOutOfRange) {
  EXPECT_THROW(filter_net(2, 3, 3), DomainError);
  EXPECT_THROW(filter_net(0, 3, 0), DomainError);
}

TEST(GroupSum, SumsMembers) {
  const Network net = group_sum_net({{0, 2}, {1}}, 3);
  EXPECT_EQ(net.evaluate(std::vector<double>{1, 2, 4}), (std::vector<double>{5, 2}));
}

TEST(GroupSum, SingleGroupIsTotal) {
  const Network net = group_sum_net({{0, 1, 2, 3}}, 4);
  EXPECT_EQ(net.evaluate(std::vector<double>{1, -2, 4, 0.5})[0], 3.5);
}

TEST(GroupSum, EachColumnHasOneOne) {
  const std::vector<std::vector<std::size_t>> groups{{4, 0}, {2}, {1, 3, 5}};
  const Network net = group_sum_net(groups, 6, 5);
  const Matrix& a = net.layers()[0].weight;
  ASSERT_EQ(a.rows(), 5u);
  for (std::size_t c = 0; c < 6; ++c) {
    double col = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) col += a(r, c);
    EXPECT_EQ(col, 1.0);
  }
  for (std::size_t c = 0; c < 6; ++c) {
    EXPECT_EQ(a(3, c), 0.0);
    EXPECT_EQ(a(4, c), 0.0);
  }
}

TEST(GroupSum, RejectsBadAssignments) {
  EXPECT_THROW(group_sum_net({{0}, {2}}, 3), DomainError);      // index 1 unassigned
  EXPECT_THROW(group_sum_net({{0, 1}, {1, 2}}, 3), DomainError);  // index 1 twice
  EXPECT_THROW(group_sum_net({{0, 3}}, 3), DomainError);
  EXPECT_THROW(group_sum_net({{0}, {1}}, 2, 1), DomainError);
}
