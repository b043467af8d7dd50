#include "lowdim/net/serialize.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "lowdim/common/error.hpp"

namespace lowdim::net {

using nlohmann::json;

std::string to_json(const Network& net) {
  json doc;
  doc["input_dim"] = net.input_dim();
  json layers = json::array();
  for (const Layer& layer : net.layers()) {
    json weight = json::array();
    for (std::size_t r = 0; r < layer.weight.rows(); ++r) {
      const auto row = layer.weight.row(r);
      weight.push_back(json(std::vector<double>(row.begin(), row.end())));
    }
    layers.push_back({{"weight", std::move(weight)}, {"bias", layer.bias}});
  }
  doc["layers"] = std::move(layers);
  return doc.dump();
}

Network from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("network JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("input_dim") || !doc.contains("layers"))
    throw ParseError("network JSON needs 'input_dim' and 'layers'");
  if (!doc["input_dim"].is_number_unsigned()) throw ParseError("'input_dim' must be a positive integer");
  const auto input_dim = doc["input_dim"].get<std::size_t>();
  const json& jl = doc["layers"];
  if (!jl.is_array() || jl.empty()) throw ParseError("'layers' must be a non-empty array");

  std::vector<Layer> layers;
  std::size_t expected_cols = input_dim;
  for (std::size_t l = 0; l < jl.size(); ++l) {
    const json& entry = jl[l];
    const std::string where = "layer " + std::to_string(l) + ": ";
    if (!entry.contains("weight") || !entry.contains("bias") || !entry["weight"].is_array() ||
        !entry["bias"].is_array())
      throw ParseError(where + "needs 'weight' and 'bias' arrays");
    const json& jw = entry["weight"];
    const std::size_t rows = jw.size();
    std::vector<double> data;
    data.reserve(rows * expected_cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (!jw[r].is_array()) throw ParseError(where + "weight row " + std::to_string(r) + " is not an array");
      if (jw[r].size() != expected_cols)
        throw ParseError(where + "ragged weight row " + std::to_string(r) + " has " +
                         std::to_string(jw[r].size()) + " entries, expected " + std::to_string(expected_cols));
      for (const json& v : jw[r]) {
        if (!v.is_number()) throw ParseError(where + "non-numeric weight");
        data.push_back(v.get<double>());
      }
    }
    std::vector<double> bias;
    for (const json& v : entry["bias"]) {
      if (!v.is_number()) throw ParseError(where + "non-numeric bias");
      bias.push_back(v.get<double>());
    }
    layers.push_back({Matrix(rows, expected_cols, std::move(data)), std::move(bias)});
    expected_cols = rows;
  }
  return Network(std::move(layers));
}

void save_network(const std::filesystem::path& path, const Network& net) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json(net) << '\n';
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace lowdim::net
