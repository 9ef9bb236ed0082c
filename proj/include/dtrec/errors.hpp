#pragma once

#include <stdexcept>
#include <string>

namespace dtrec {

// Input file or table is structurally broken (unknown fields, wrong sizes, bad numbers).
struct MalformedInput : std::runtime_error {
  explicit MalformedInput(const std::string& what) : std::runtime_error(what) {}
};

// The given line sums admit no solution; carries the first offending line.
struct InconsistentLineSums : std::runtime_error {
  InconsistentLineSums(const std::string& what, int direction_index)
      : std::runtime_error(what), direction(direction_index) {}
  int direction;
};

// A free-choice policy does not match the free positions discovered during a run.
struct PolicyMismatch : std::runtime_error {
  explicit PolicyMismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dtrec
