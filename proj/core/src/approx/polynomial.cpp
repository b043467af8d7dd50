#include "lowdim/approx/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "lowdim/common/error.hpp"
#include "lowdim/net/calculus.hpp"

namespace lowdim::approx {

PolNet pol_net(std::span<const Polynomial> polys, double epsilon, const MulOptions& options) {
  if (polys.empty()) throw DomainError("pol_net: no polynomials");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("pol_net: epsilon must lie in (0, 1)");
  const std::size_t dim = polys.front().center.size();
  if (dim == 0) throw DomainError("pol_net: zero-dimensional polynomial");
  unsigned degree = 0;
  for (const auto& p : polys) {
    if (p.center.size() != dim) throw DomainError("pol_net: polynomials differ in dimension");
    degree = std::max(degree, p.degree());
  }

  const auto basis = multi_indices(dim, degree);
  std::vector<std::map<MultiIndex, double>> rebased;
  rebased.reserve(polys.size());
  double mass = 0.0;
  for (const auto& p : polys) {
    rebased.push_back(rebase_to_origin(p));
    double s = 0.0;
    for (const auto& [gamma, c] : rebased.back())
      if (order(gamma) >= 2) s += std::abs(c);
    mass = std::max(mass, s);
  }
  // Orders 0 and 1 are exact, so only the higher monomials share the budget.
  const double mono_eps = mass > 0.0 ? std::min(epsilon / mass, 0.5) : 0.5;

  std::size_t teeth = 0;
  std::vector<net::Network> monos;
  monos.reserve(basis.size());
  std::size_t depth = 0;
  for (const auto& gamma : basis) {
    MulNet m = mul_net(gamma, mono_eps, options);
    teeth = std::max(teeth, m.teeth);
    depth = std::max(depth, m.net.depth());
    monos.push_back(std::move(m.net));
  }
  for (auto& m : monos)
    if (m.depth() < depth) m = net::concat(net::identity_net(1, depth - m.depth()), m);

  net::Layer mix{net::Matrix(polys.size(), basis.size()), std::vector<double>(polys.size(), 0.0)};
  for (std::size_t l = 0; l < polys.size(); ++l)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const auto it = rebased[l].find(basis[j]);
      if (it != rebased[l].end()) mix.weight(l, j) = it->second;
    }
  return PolNet{net::concat(net::Network({std::move(mix)}), net::parallel_shared_input(monos)), teeth,
                basis.size()};
}

}  // namespace lowdim::approx
