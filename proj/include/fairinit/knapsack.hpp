#pragma once

// Exact 0/1 knapsack: choose a subset of items maximising total value while
// total weight stays within a capacity. Pseudo-polynomial; picks whichever of
// the weight- or value-indexed tables is smaller and falls back to subset
// enumeration for short item lists with huge numbers.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "exact.hpp"

namespace fairinit {

struct KnapsackSolution {
  Value value = 0;
  Value weight = 0;
  std::vector<std::size_t> chosen; // indices into the item arrays, ascending
};

struct KnapsackLimits {
  std::size_t max_table_cells = std::size_t{1} << 26;
  std::size_t max_enumeration_items = 24;
};

namespace detail {

inline KnapsackSolution knapsack_by_weight(std::span<const Value> w, std::span<const Value> v,
                                           const std::vector<std::size_t>& items, Value cap) {
  const auto width = static_cast<std::size_t>(cap) + 1;
  std::vector<Value> best(width, 0);
  std::vector<std::vector<bool>> take(items.size(), std::vector<bool>(width, false));
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto wk = static_cast<std::size_t>(w[items[k]]);
    const Value vk = v[items[k]];
    for (std::size_t c = width; c-- > wk;) {
      if (best[c - wk] + vk > best[c]) {
        best[c] = best[c - wk] + vk;
        take[k][c] = true;
      }
    }
  }
  KnapsackSolution out;
  std::size_t c = width - 1;
  for (std::size_t k = items.size(); k-- > 0;) {
    if (take[k][c]) {
      out.chosen.push_back(items[k]);
      c -= static_cast<std::size_t>(w[items[k]]);
    }
  }
  return out;
}

inline KnapsackSolution knapsack_by_value(std::span<const Value> w, std::span<const Value> v,
                                          const std::vector<std::size_t>& items, Value cap) {
  Value total = 0;
  for (auto k : items)
    total += v[k];
  const auto width = static_cast<std::size_t>(total) + 1;
  constexpr Value kInf = std::numeric_limits<Value>::max();
  // lightest[x]: minimum weight of a subset with value exactly x
  std::vector<Value> lightest(width, kInf);
  lightest[0] = 0;
  std::vector<std::vector<bool>> take(items.size(), std::vector<bool>(width, false));
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto vk = static_cast<std::size_t>(v[items[k]]);
    const Value wk = w[items[k]];
    for (std::size_t x = width; x-- > vk;) {
      if (lightest[x - vk] != kInf && lightest[x - vk] + wk < lightest[x]) {
        lightest[x] = lightest[x - vk] + wk;
        take[k][x] = true;
      }
    }
  }
  std::size_t x = width - 1;
  while (lightest[x] > cap)
    --x;
  KnapsackSolution out;
  for (std::size_t k = items.size(); k-- > 0;) {
    if (take[k][x]) {
      out.chosen.push_back(items[k]);
      x -= static_cast<std::size_t>(v[items[k]]);
    }
  }
  return out;
}

inline KnapsackSolution knapsack_by_subsets(std::span<const Value> w, std::span<const Value> v,
                                            const std::vector<std::size_t>& items, Value cap) {
  KnapsackSolution best;
  std::uint64_t best_mask = 0;
  Value best_value = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << items.size()); ++mask) {
    Value tw = 0, tv = 0;
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (mask >> k & 1) {
        tw += w[items[k]];
        tv += v[items[k]];
      }
    }
    if (tw <= cap && tv > best_value) {
      best_value = tv;
      best_mask = mask;
    }
  }
  for (std::size_t k = 0; k < items.size(); ++k)
    if (best_mask >> k & 1)
      best.chosen.push_back(items[k]);
  return best;
}

} // namespace detail

// Maximises sum(values[k]) over subsets with sum(weights[k]) <= capacity.
// All numbers must be non-negative; capacity must be >= 0.
inline KnapsackSolution max_value_knapsack(std::span<const Value> weights, std::span<const Value> values,
                                           Value capacity, const KnapsackLimits& limits = {}) {
  if (weights.size() != values.size())
    throw InputError("knapsack: weight and value arrays differ in length");
  if (capacity < 0)
    throw PreconditionViolated("knapsack: negative capacity");

  // Items heavier than the capacity can never be chosen; items worth nothing
  // are skipped so the tie-break prefers smaller subsets.
  std::vector<std::size_t> items;
  Value weight_sum = 0, value_sum = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] <= capacity && values[k] > 0) {
      items.push_back(k);
      weight_sum += weights[k];
      value_sum += values[k];
    }
  }

  KnapsackSolution out;
  if (weight_sum <= capacity) {
    out.chosen = items;
  } else {
    const auto weight_cells = static_cast<std::size_t>(std::min(capacity, weight_sum)) + 1;
    const auto value_cells = static_cast<std::size_t>(value_sum) + 1;
    const auto rows = items.size() + 1;
    if (weight_cells <= value_cells && weight_cells * rows <= limits.max_table_cells)
      out = detail::knapsack_by_weight(weights, values, items, capacity);
    else if (value_cells * rows <= limits.max_table_cells)
      out = detail::knapsack_by_value(weights, values, items, capacity);
    else if (weight_cells * rows <= limits.max_table_cells)
      out = detail::knapsack_by_weight(weights, values, items, capacity);
    else if (items.size() <= limits.max_enumeration_items)
      out = detail::knapsack_by_subsets(weights, values, items, capacity);
    else
      throw GuardExceeded("knapsack: " + std::to_string(items.size()) + " items with weight table " +
                          std::to_string(weight_cells) + " and value table " + std::to_string(value_cells) +
                          " exceed the table limit");
  }
  std::sort(out.chosen.begin(), out.chosen.end());
  out.value = 0;
  out.weight = 0;
  for (auto k : out.chosen) {
    out.value += values[k];
    out.weight += weights[k];
  }
  return out;
}

} // namespace fairinit
