#pragma once

#include <stdexcept>

namespace fairinit {

// Malformed input: wrong shapes, out-of-range indices, overlapping bundles,
// unparseable files.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// An exhaustive enumeration or table would exceed its configured limit.
// Oracles never truncate silently; they throw this instead.
class GuardExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an algorithm does not hold for the input
// (e.g. running the identical-resource DP on non-identical resources).
class PreconditionViolated : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace fairinit
