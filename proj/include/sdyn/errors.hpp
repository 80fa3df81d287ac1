#pragma once

#include <stdexcept>
#include <string>

namespace sdyn {

/// Thrown when a randomized generator cannot produce a valid graph
/// within its retry budget.
class generation_error : public std::runtime_error {
 public:
  explicit generation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a Monte-Carlo walk exceeds the hard step cap; absorption is
/// certain on a connected graph, so hitting the cap indicates a bug.
class walk_cap_exceeded : public std::runtime_error {
 public:
  explicit walk_cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sdyn
