#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "lowdim/common/point_cloud.hpp"

namespace lowdim::geometry {

enum class SupportKind { kSphere, kKoch, kLpBallUnion };

// Low-dimensional subsets of [0,1]^D.
//   sphere        uniform on the unit d-sphere in the first d+1 coordinates,
//                 mapped to centre 1/2 and radius 1/2; other coordinates 1/2
//   koch          uniform by arc length on the level-k Koch polyline from
//                 (0,0) to (1,0); D = 2, d is ignored
//   lp_ball_union equal-weight mixture of the uniform laws on the solid
//                 l^{1/2} ball and the solid l^2 ball in the first d coordinates,
//                 both centred at 1/2; other coordinates 1/2
struct SupportSpec {
  SupportKind kind = SupportKind::kSphere;
  std::size_t intrinsic_dim = 1;
  std::size_t ambient_dim = 2;
  std::size_t koch_level = 7;
  double lhalf_radius = 0.5;
  double l2_radius = 0.25;
};

SupportKind parse_support_kind(const std::string& name);
std::string to_string(SupportKind kind);

// n points drawn from the support; a given seed always yields the same cloud.
PointCloud generate_support(const SupportSpec& spec, std::size_t n, std::uint64_t seed);

// Box-counting dimension of the support itself (log 4 / log 3 for koch).
double nominal_dimension(const SupportSpec& spec);

}  // namespace lowdim::geometry
