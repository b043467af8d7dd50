#pragma once

#include <filesystem>
#include <string>

#include "lowdim/net/network.hpp"

namespace lowdim::net {

// JSON text of the form
//   {"input_dim": n, "layers": [{"weight": [[...], ...], "bias": [...]}, ...]}
// with weights row-major. Doubles are written in shortest round-trip form, so
// a written network reads back to an identical one.
std::string to_json(const Network& net);
Network from_json(const std::string& text);

void save_network(const std::filesystem::path& path, const Network& net);
Network load_network(const std::filesystem::path& path);

}  // namespace lowdim::net
