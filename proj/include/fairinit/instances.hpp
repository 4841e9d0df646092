#pragma once

// Named instances, the harmonic max-min-share impossibility family and a
// seeded random generator.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "exact.hpp"
#include "model.hpp"

namespace fairinit {

inline constexpr std::array<std::string_view, 3> kPresetNames{"obs1", "ex1", "ex2"};

// obs1: two agents, four identical resources; no complete EF1-init allocation.
// ex1:  three agents, ten identical resources; the per-pair X* relaxation
//       weighted by u_j is unsatisfiable.
// ex2:  three agents, 100 resources; agent 0 only cares about resource 0.
inline Instance preset(std::string_view name) {
  if (name == "obs1")
    return Instance::identical(4, {1, 10}, {3, 10});
  if (name == "ex1")
    return Instance::identical(10, {0, 0, 20}, {20, 5, 20});
  if (name == "ex2") {
    std::vector<Value> first(100, 0);
    first[0] = 500;
    return Instance(100, {0, 0, 10}, {first, std::vector<Value>(100, 50), std::vector<Value>(100, 50)});
  }
  throw InputError("unknown preset '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Harmonic family

namespace detail {
inline Wide gcd_wide(Wide a, Wide b) {
  while (b != 0) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}
} // namespace detail

// Smallest n with alpha * H_n > 3, with H_n kept as an exact fraction. Any
// positive alpha is accepted; throws GuardExceeded once H_n no longer fits
// 128-bit arithmetic.
inline std::size_t harmonic_agent_count(Ratio alpha) {
  if (alpha.num <= 0)
    throw InputError("alpha must be positive");
  constexpr Wide kLimit = Wide{1} << 100;
  Wide num = 0, den = 1; // H_n
  for (std::size_t n = 1;; ++n) {
    num = num * static_cast<Wide>(n) + den;
    den *= static_cast<Wide>(n);
    const Wide g = detail::gcd_wide(num, den);
    num /= g;
    den /= g;
    if (num > kLimit || den > kLimit)
      throw GuardExceeded("harmonic number H_" + std::to_string(n) + " overflows exact arithmetic");
    if (static_cast<Wide>(alpha.num) * num > 3 * static_cast<Wide>(alpha.den) * den)
      return n;
  }
}

// n = harmonic_agent_count(alpha) agents, m = 2n identical resources,
// b_i = u_i(r) = m^i for the 0-based agent index i. No allocation is
// alpha-MMS-init here.
inline Instance mms_harmonic_instance(Ratio alpha) {
  if (alpha.num <= 0 || alpha.den < alpha.num)
    throw InputError("alpha must satisfy 0 < alpha <= 1, got " + alpha.str());
  const auto n = harmonic_agent_count(alpha);
  const auto m = 2 * n;
  // Largest outcome is b + m * v = m^(n-1) * (m + 1).
  Wide top = static_cast<Wide>(m) + 1;
  std::vector<Value> powers;
  Wide p = 1;
  for (std::size_t i = 0; i < n; ++i) {
    powers.push_back(static_cast<Value>(p));
    if (i + 1 < n) {
      p *= static_cast<Wide>(m);
      if (p * top > std::numeric_limits<Value>::max())
        throw GuardExceeded("harmonic instance with " + std::to_string(n) + " agents overflows 64-bit values");
    }
  }
  return Instance::identical(m, powers, powers);
}

// ---------------------------------------------------------------------------
// Random instances

// 64-bit linear congruential generator with Knuth's MMIX constants:
// state <- 6364136223846793005 * state + 1442695040888963407 (mod 2^64).
// The state starts at the seed; each draw advances once and uses the high
// 32 bits. uniform(k) maps those bits to [0, k) as (hi32 * k) >> 32.
class Lcg64 {
public:
  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  std::uint32_t next32() {
    state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<std::uint32_t>(state_ >> 32);
  }

  // Uniform-ish in [0, k), k <= 2^32.
  std::uint64_t uniform(std::uint64_t k) { return (static_cast<std::uint64_t>(next32()) * k) >> 32; }

  // Inclusive range [lo, hi].
  Value between(Value lo, Value hi) { return lo + static_cast<Value>(uniform(static_cast<std::uint64_t>(hi - lo + 1))); }

private:
  std::uint64_t state_;
};

enum class Flavor { General, Identical, Diminishing };

inline std::string_view flavor_name(Flavor f) {
  switch (f) {
  case Flavor::General: return "general";
  case Flavor::Identical: return "identical";
  case Flavor::Diminishing: return "diminishing";
  }
  return "?";
}

inline Flavor parse_flavor(std::string_view s) {
  for (auto f : {Flavor::General, Flavor::Identical, Flavor::Diminishing})
    if (flavor_name(f) == s)
      return f;
  throw InputError("unknown flavor '" + std::string(s) + "'");
}

struct RandomSpec {
  std::uint64_t seed = 0;
  std::size_t agents = 2;
  std::size_t resources = 1;
  Value max_u = 1; // utilities drawn from [0, max_u] ([1, max_u] when identical)
  Value max_b = 0; // initial utilities drawn from [0, max_b]
  Flavor flavor = Flavor::General;
};

// Draws until the instance passes strict validation, at most 1000 times,
// then falls back to b = 0 and every utility 1.
// Diminishing: agent ids are sorted by b, and each utility is clamped to the
// minimum over agents with strictly smaller b.
inline Instance random_instance(const RandomSpec& spec) {
  if (spec.agents < 2 || spec.resources < 1 || spec.max_u < 1 || spec.max_b < 0)
    throw InputError("random instance needs n >= 2, m >= 1, max_u >= 1, max_b >= 0");
  const auto n = spec.agents;
  const auto m = spec.resources;
  Lcg64 rng(spec.seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Value> b(n);
    for (auto& x : b)
      x = rng.between(0, spec.max_b);
    std::vector<std::vector<Value>> rows(n, std::vector<Value>(m));
    if (spec.flavor == Flavor::Identical) {
      for (auto& row : rows)
        std::fill(row.begin(), row.end(), rng.between(1, spec.max_u));
    } else {
      for (auto& row : rows)
        for (auto& x : row)
          x = rng.between(0, spec.max_u);
    }
    if (spec.flavor == Flavor::Diminishing) {
      std::sort(b.begin(), b.end());
      for (std::size_t i = 1; i < n; ++i)
        for (std::size_t k = 0; k < i; ++k)
          if (b[k] < b[i])
            for (Resource r = 0; r < m; ++r)
              rows[i][r] = std::min(rows[i][r], rows[k][r]);
    }
    Instance inst(m, std::move(b), rows);
    if (validate_instance(inst).ok())
      return inst;
  }
  return Instance(m, std::vector<Value>(n, 0), std::vector<std::vector<Value>>(n, std::vector<Value>(m, 1)));
}

} // namespace fairinit
