#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lowdim {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape disagreement between a vector and the layer consuming it.
class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t layer_index, const std::string& what)
      : Error("layer " + std::to_string(layer_index) + ": " + what), layer_index_(layer_index) {}

  // Zero-based index of the offending layer.
  std::size_t layer_index() const noexcept { return layer_index_; }

 private:
  std::size_t layer_index_;
};

// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed file or text input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An iterative construction or optimization did not reach its target.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace lowdim
