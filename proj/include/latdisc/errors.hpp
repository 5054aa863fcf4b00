#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace latdisc {

/// Malformed input or violated precondition. Maps to CLI exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A polygon invariant failed; carries the offending vertex index when known.
class PolygonError : public InputError {
 public:
  PolygonError(const std::string& what, std::optional<std::size_t> vertex = std::nullopt)
      : InputError(vertex ? what + " (vertex " + std::to_string(*vertex) + ")" : what),
        vertex_(vertex) {}

  std::optional<std::size_t> vertex() const { return vertex_; }

 private:
  std::optional<std::size_t> vertex_;
};

/// Requested work exceeds a documented cost cap. Maps to CLI exit code 3.
class CostCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bounded search ran out of range without meeting its target. Exit code 4.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace latdisc
