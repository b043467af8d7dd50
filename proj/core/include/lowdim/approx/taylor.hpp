#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "lowdim/approx/holder.hpp"

namespace lowdim::approx {

// sum_alpha c_alpha (x - center)^alpha
struct Polynomial {
  std::vector<double> center;
  std::map<MultiIndex, double> coeffs;

  double operator()(std::span<const double> x) const;
  unsigned degree() const;
};

// x^alpha
double monomial(const MultiIndex& alpha, std::span<const double> x);

// Coefficients c_alpha = d^alpha f(center) / alpha! for |alpha| <= degree;
// the degree defaults to holder_degree(beta). Every such alpha is present.
Polynomial taylor_expand(const HolderTarget& target, std::span<const double> center,
                         std::optional<unsigned> degree = std::nullopt);

// The same polynomial in powers of x: sum_gamma c~_gamma x^gamma, by the
// binomial theorem in every coordinate. Zero coefficients are kept.
std::map<MultiIndex, double> rebase_to_origin(const Polynomial& p);

}  // namespace lowdim::approx
