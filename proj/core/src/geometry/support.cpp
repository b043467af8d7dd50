#include "lowdim/geometry/support.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "lowdim/common/error.hpp"
#include "lowdim/common/random.hpp"

namespace lowdim::geometry {
namespace {

using Vec2 = std::array<double, 2>;

std::vector<Vec2> koch_polyline(std::size_t level) {
  std::vector<Vec2> pts{{0.0, 0.0}, {1.0, 0.0}};
  const double c = 0.5, s = std::sqrt(3.0) / 2.0;  // rotation by +60 degrees
  for (std::size_t k = 0; k < level; ++k) {
    std::vector<Vec2> next;
    next.reserve(4 * (pts.size() - 1) + 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const Vec2 p = pts[i], q = pts[i + 1];
      const Vec2 d{(q[0] - p[0]) / 3.0, (q[1] - p[1]) / 3.0};
      const Vec2 a{p[0] + d[0], p[1] + d[1]};
      const Vec2 b{p[0] + 2.0 * d[0], p[1] + 2.0 * d[1]};
      const Vec2 peak{a[0] + c * d[0] - s * d[1], a[1] + s * d[0] + c * d[1]};
      next.push_back(p);
      next.push_back(a);
      next.push_back(peak);
      next.push_back(b);
    }
    next.push_back(pts.back());
    pts = std::move(next);
  }
  return pts;
}

// Uniform point of the solid unit l^p ball in R^d: y_i with density
// proportional to exp(-|t|^p), W ~ Exp(1), x = y / (sum |y_i|^p + W)^(1/p).
void sample_lp_ball(double p, std::span<double> out, Rng& rng) {
  std::gamma_distribution<double> gamma(1.0 / p, 1.0);
  std::exponential_distribution<double> expo(1.0);
  std::bernoulli_distribution sign(0.5);
  double norm_p = 0.0;
  for (double& v : out) {
    const double g = gamma(rng);
    v = std::pow(g, 1.0 / p) * (sign(rng) ? 1.0 : -1.0);
    norm_p += g;  // |y_i|^p
  }
  const double scale = std::pow(norm_p + expo(rng), -1.0 / p);
  for (double& v : out) v *= scale;
}

}  // namespace

SupportKind parse_support_kind(const std::string& name) {
  if (name == "sphere") return SupportKind::kSphere;
  if (name == "koch") return SupportKind::kKoch;
  if (name == "lp_ball_union" || name == "lp-ball-union") return SupportKind::kLpBallUnion;
  throw DomainError("unknown support kind '" + name + "' (expected sphere, koch or lp_ball_union)");
}

std::string to_string(SupportKind kind) {
  switch (kind) {
    case SupportKind::kSphere: return "sphere";
    case SupportKind::kKoch: return "koch";
    case SupportKind::kLpBallUnion: return "lp_ball_union";
  }
  return "unknown";
}

PointCloud generate_support(const SupportSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("generate_support: n must be positive");
  const std::size_t D = spec.ambient_dim;
  const std::size_t d = spec.intrinsic_dim;
  Rng rng(seed);
  PointCloud cloud(D);
  cloud.reserve(n);
  std::vector<double> point(D, 0.5);

  switch (spec.kind) {
    case SupportKind::kSphere: {
      if (d == 0 || d > D) throw DomainError("sphere: need 1 <= d <= D");
      if (d + 1 > D) throw DomainError("sphere: a d-sphere needs d + 1 <= D ambient coordinates");
      std::normal_distribution<double> normal(0.0, 1.0);
      std::vector<double> g(d + 1);
      for (std::size_t i = 0; i < n; ++i) {
        double norm = 0.0;
        do {
          norm = 0.0;
          for (double& v : g) {
            v = normal(rng);
            norm += v * v;
          }
        } while (norm == 0.0);
        norm = std::sqrt(norm);
        for (std::size_t j = 0; j <= d; ++j) point[j] = std::clamp(0.5 + 0.5 * g[j] / norm, 0.0, 1.0);
        cloud.push_back(point);
      }
      break;
    }
    case SupportKind::kKoch: {
      if (D != 2) throw DomainError("koch: ambient dimension must be 2");
      if (spec.koch_level > 12) throw DomainError("koch: level above 12 is not supported");
      const auto poly = koch_polyline(spec.koch_level);
      std::uniform_int_distribution<std::size_t> seg(0, poly.size() - 2);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = seg(rng);
        const double t = unit(rng);
        point[0] = std::clamp(poly[k][0] + t * (poly[k + 1][0] - poly[k][0]), 0.0, 1.0);
        point[1] = std::clamp(poly[k][1] + t * (poly[k + 1][1] - poly[k][1]), 0.0, 1.0);
        cloud.push_back(point);
      }
      break;
    }
    case SupportKind::kLpBallUnion: {
      if (d == 0 || d > D) throw DomainError("lp_ball_union: need 1 <= d <= D");
      if (spec.lhalf_radius > 0.5 || spec.l2_radius > 0.5 || spec.lhalf_radius <= 0.0 || spec.l2_radius <= 0.0)
        throw DomainError("lp_ball_union: radii must lie in (0, 1/2]");
      std::bernoulli_distribution pick_half(0.5);
      std::vector<double> y(d);
      for (std::size_t i = 0; i < n; ++i) {
        const bool half = pick_half(rng);
        sample_lp_ball(half ? 0.5 : 2.0, y, rng);
        const double r = half ? spec.lhalf_radius : spec.l2_radius;
        for (std::size_t j = 0; j < d; ++j) point[j] = std::clamp(0.5 + r * y[j], 0.0, 1.0);
        cloud.push_back(point);
      }
      break;
    }
  }
  return cloud;
}

double nominal_dimension(const SupportSpec& spec) {
  if (spec.kind == SupportKind::kKoch) return std::log(4.0) / std::log(3.0);
  return static_cast<double>(spec.intrinsic_dim);
}

}  // namespace lowdim::geometry
