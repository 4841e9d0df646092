#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "model.hpp"

namespace fairinit {

// Size limit for exhaustive searches. Exceeding it is an error, never a
// silent truncation.
struct Guard {
  std::uint64_t max_assignments = 100'000'000;

  // Default guard, overridden by the FAIRALLOC_GUARD environment variable
  // when it holds a positive integer.
  static Guard from_env() {
    Guard g;
    if (const char* env = std::getenv("FAIRALLOC_GUARD")) {
      char* end = nullptr;
      const auto v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0)
        g.max_assignments = v;
    }
    return g;
  }
};

// base^exp, throwing GuardExceeded once the result passes `guard`.
inline std::uint64_t guarded_power(std::uint64_t base, std::size_t exp, const Guard& guard, const char* what) {
  std::uint64_t out = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (base != 0 && out > guard.max_assignments / base)
      throw GuardExceeded(std::string(what) + ": " + std::to_string(base) + "^" + std::to_string(exp) +
                          " exceeds the guard of " + std::to_string(guard.max_assignments));
    out *= base;
  }
  if (out > guard.max_assignments)
    throw GuardExceeded(std::string(what) + " exceeds the guard of " + std::to_string(guard.max_assignments));
  return out;
}

// Counts through every vector in [0, base)^length in lexicographic order,
// position 0 most significant.
class Odometer {
public:
  Odometer(std::size_t base, std::size_t length) : base_(base), digits_(length, 0) {}

  const std::vector<std::size_t>& digits() const noexcept { return digits_; }

  // False once the sequence wraps around.
  bool next() {
    for (std::size_t k = digits_.size(); k-- > 0;) {
      if (++digits_[k] < base_)
        return true;
      digits_[k] = 0;
    }
    return false;
  }

private:
  std::size_t base_;
  std::vector<std::size_t> digits_;
};

} // namespace fairinit
