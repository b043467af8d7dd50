#pragma once

#include <cstddef>
#include <span>

#include "lowdim/approx/multiplication.hpp"
#include "lowdim/approx/taylor.hpp"
#include "lowdim/net/network.hpp"

namespace lowdim::approx {

struct PolNet {
  net::Network net;
  std::size_t teeth = 0;          // largest teeth among the monomial nets
  std::size_t monomial_count = 0;
};

// m-output network whose output l approximates polys[l] on [0,1]^D within
// epsilon. Every polynomial is rewritten in powers of x; one monomial net per
// gamma with |gamma| <= max degree is shared by all outputs, and a final
// linear layer mixes them. Monomial accuracy is epsilon / max_l sum |c~_l|.
PolNet pol_net(std::span<const Polynomial> polys, double epsilon, const MulOptions& options = {});

}  // namespace lowdim::approx
