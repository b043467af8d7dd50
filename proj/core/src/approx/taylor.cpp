#include "lowdim/approx/taylor.hpp"

#include <cmath>

#include "lowdim/common/error.hpp"

namespace lowdim::approx {
namespace {

double binomial(unsigned n, unsigned k) {
  double b = 1.0;
  for (unsigned i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

double monomial(const MultiIndex& alpha, std::span<const double> x) {
  if (alpha.size() != x.size()) throw DomainError("monomial: dimension mismatch");
  double v = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (unsigned k = 0; k < alpha[i]; ++k) v *= x[i];
  return v;
}

double Polynomial::operator()(std::span<const double> x) const {
  if (x.size() != center.size()) throw DomainError("polynomial: dimension mismatch");
  std::vector<double> shifted(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) shifted[i] = x[i] - center[i];
  double s = 0.0;
  for (const auto& [alpha, c] : coeffs) s += c * monomial(alpha, shifted);
  return s;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [alpha, c] : coeffs) d = std::max(d, order(alpha));
  return d;
}

Polynomial taylor_expand(const HolderTarget& target, std::span<const double> center,
                         std::optional<unsigned> degree) {
  if (center.size() != target.dim) throw DomainError("taylor_expand: centre dimension mismatch");
  for (double c : center)
    if (!(c >= 0.0 && c <= 1.0)) throw DomainError("taylor_expand: centre outside [0, 1]^D");
  if (!target.deriv) throw DomainError("taylor_expand: target has no derivative oracle");
  Polynomial p;
  p.center.assign(center.begin(), center.end());
  for (const auto& alpha : multi_indices(target.dim, degree.value_or(holder_degree(target.beta)))) {
    const double d = target.deriv(alpha, center);
    if (!std::isfinite(d)) throw DomainError("taylor_expand: derivative oracle returned a non-finite value");
    p.coeffs[alpha] = d / factorial(alpha);
  }
  return p;
}

std::map<MultiIndex, double> rebase_to_origin(const Polynomial& p) {
  const std::size_t dim = p.center.size();
  std::map<MultiIndex, double> out;
  for (const auto& alpha : multi_indices(dim, p.degree())) out[alpha] = 0.0;
  for (const auto& [alpha, c] : p.coeffs) {
    // Expand prod_i (x_i - a_i)^{alpha_i} over every gamma <= alpha.
    MultiIndex gamma(dim, 0);
    while (true) {
      double term = c;
      for (std::size_t i = 0; i < dim; ++i)
        term *= binomial(alpha[i], gamma[i]) * std::pow(-p.center[i], static_cast<int>(alpha[i] - gamma[i]));
      out[gamma] += term;
      std::size_t i = 0;
      while (i < dim && gamma[i] == alpha[i]) gamma[i++] = 0;
      if (i == dim) break;
      ++gamma[i];
    }
  }
  return out;
}

}  // namespace lowdim::approx
