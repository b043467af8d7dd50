#include "lowdim/regression/targets.hpp"

#include <cmath>
#include <numbers>

#include "lowdim/common/error.hpp"

namespace lowdim::regression {
namespace {

constexpr double kPi = std::numbers::pi;
const double kRoot2m1 = std::numbers::sqrt2 - 1.0;
const double kInvRoot2 = 1.0 / std::numbers::sqrt2;

approx::HolderTarget sim61(std::size_t dim) {
  if (dim < 2) throw DomainError("sim61 needs D >= 2");
  const double D = static_cast<double>(dim);
  approx::HolderTarget t;
  t.name = "sim61";
  t.dim = dim;
  t.beta = 2.0;
  // sup|f| <= 1 + 2; the Hessian rows have l1 norm <= 8 pi^2 / D + 2 / (D - 1).
  t.bound = 3.0 + 8.0 * kPi * kPi / D + 2.0 / (D - 1.0);
  t.value = [dim, D](std::span<const double> x) {
    double chain = 0.0, sep = 0.0;
    for (std::size_t i = 0; i + 1 < dim; ++i) chain += x[i] * x[i + 1];
    for (std::size_t i = 0; i < dim; ++i) {
      if (x[i] <= 0.5)
        sep += 2.0 * std::sin(2.0 * kPi * x[i]);
      else
        sep += 4.0 * kPi / kRoot2m1 * (x[i] - kInvRoot2) * (x[i] - kInvRoot2) - kPi * kRoot2m1;
    }
    return chain / (D - 1.0) + sep / D;
  };
  t.deriv = [t_value = t.value, dim, D](const approx::MultiIndex& a, std::span<const double> x) {
    const unsigned k = approx::order(a);
    if (k == 0) return t_value(x);
    if (k > 1) throw DomainError("sim61: derivatives above order 1 are not provided");
    std::size_t j = 0;
    while (a[j] == 0) ++j;
    double g = 0.0;
    if (j > 0) g += x[j - 1];
    if (j + 1 < dim) g += x[j + 1];
    g /= D - 1.0;
    if (x[j] <= 0.5)
      g += 4.0 * kPi * std::cos(2.0 * kPi * x[j]) / D;
    else
      g += 8.0 * kPi / kRoot2m1 * (x[j] - kInvRoot2) / D;
    return g;
  };
  return t;
}

approx::HolderTarget sim62(std::size_t dim) {
  if (dim == 0) throw DomainError("sim62 needs D >= 1");
  const double D = static_cast<double>(dim);
  approx::HolderTarget t;
  t.name = "sim62";
  t.dim = dim;
  t.beta = 1.0;
  t.bound = 1.25;  // sup|f| <= 1/4 plus the sup-norm Lipschitz constant 1
  t.value = [dim, D](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) s += x[i] <= 0.5 ? x[i] * x[i] : 0.75 - x[i];
    return s / D;
  };
  t.deriv = [t_value = t.value](const approx::MultiIndex& a, std::span<const double> x) {
    if (approx::order(a) != 0) throw DomainError("sim62: only the value oracle is provided");
    return t_value(x);
  };
  return t;
}

}  // namespace

approx::HolderTarget builtin_target(const std::string& tag, std::size_t dim) {
  if (tag == "sim61") return sim61(dim);
  if (tag == "sim62") return sim62(dim);
  return approx::named_target(tag, dim);
}

}  // namespace lowdim::regression
