#pragma once

// Existence of EF-init / EF1-init allocations for a small constant number of
// agents, by dynamic programming over the resources r_0, r_1, ... in order.
//
// A state after placing the first l resources is the matrix v[i][j] = u_i(X_j)
// (and, for EF1-init, p[i][j] = max u_i(r) over r in X_j, 0 if X_j is empty).
// Rather than materialising the full boolean table over all (s+1)^(n^2)
// matrices, only reachable states are kept, one layer per l; a state is in
// layer l exactly when the corresponding table entry is true.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "model.hpp"

namespace fairinit {

struct FewAgentLimits {
  std::size_t max_agents = 3;
  std::size_t max_states = 4'000'000; // summed over all layers
};

struct FewAgentStats {
  std::size_t states_visited = 0;
  std::vector<std::size_t> layer_sizes; // layer l = states after l resources
};

namespace detail {
struct FewAgentDp;
}

// Reachable states of one DP run. Each state is a flat vector: v row-major
// (n*n entries), followed by p row-major for EF1-init.
class FewAgentTable {
public:
  struct Link {
    std::size_t parent; // index into the previous layer
    Agent receiver;     // who got resource l-1
  };

  FewAgentTable(std::size_t agents, bool with_best) : n_(agents), with_best_(with_best) {}

  std::size_t agents() const noexcept { return n_; }
  bool with_best() const noexcept { return with_best_; }
  std::size_t layers() const noexcept { return states_.size(); }
  const std::vector<std::vector<Value>>& layer(std::size_t l) const { return states_.at(l); }
  const Link& link(std::size_t l, std::size_t k) const { return links_.at(l).at(k); }

  Value v(const std::vector<Value>& s, Agent i, Agent j) const { return s[i * n_ + j]; }
  Value p(const std::vector<Value>& s, Agent i, Agent j) const { return s[n_ * n_ + i * n_ + j]; }

  // Walks predecessor links back from state k of the last layer.
  Allocation reconstruct(std::size_t k) const {
    Allocation out(n_);
    for (std::size_t l = states_.size() - 1; l > 0; --l) {
      const auto& lk = links_[l][k];
      out.give(lk.receiver, l - 1);
      k = lk.parent;
    }
    return out;
  }

private:
  friend struct detail::FewAgentDp;
  std::size_t n_;
  bool with_best_;
  std::vector<std::vector<std::vector<Value>>> states_;
  std::vector<std::vector<Link>> links_;
};

struct FewAgentResult {
  std::optional<Allocation> allocation;
  FewAgentStats stats;
  std::optional<FewAgentTable> table; // kept only on request
};

namespace detail {
struct StateHash {
  std::size_t operator()(const std::vector<Value>& s) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Value x : s) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

struct FewAgentDp {
  static FewAgentResult run(const Instance& inst, bool ef1, const FewAgentLimits& limits, bool keep_table) {
    require_valid(inst);
    const auto n = inst.agents();
    const auto m = inst.resources();
    if (n > limits.max_agents)
      throw GuardExceeded("few-agent DP: " + std::to_string(n) + " agents exceed the bound of " +
                          std::to_string(limits.max_agents));

    FewAgentTable table(n, ef1);
    const std::size_t width = ef1 ? 2 * n * n : n * n;
    table.states_.push_back({std::vector<Value>(width, 0)});
    table.links_.push_back({{0, 0}});
    FewAgentStats stats;
    stats.layer_sizes.push_back(1);
    stats.states_visited = 1;

    for (Resource r = 0; r < m; ++r) {
      const auto& prev = table.states_.back();
      std::vector<std::vector<Value>> next;
      std::vector<FewAgentTable::Link> links;
      std::unordered_map<std::vector<Value>, std::size_t, detail::StateHash> seen;
      for (std::size_t k = 0; k < prev.size(); ++k) {
        for (Agent recv = 0; recv < n; ++recv) {
          auto s = prev[k];
          for (Agent i = 0; i < n; ++i) {
            const Value u = inst.utility(i, r);
            s[i * n + recv] += u;
            if (ef1) {
              auto& best = s[n * n + i * n + recv];
              best = std::max(best, u);
            }
          }
          if (seen.emplace(s, next.size()).second) {
            next.push_back(std::move(s));
            links.push_back({k, recv});
            if (++stats.states_visited > limits.max_states)
              throw GuardExceeded("few-agent DP: more than " + std::to_string(limits.max_states) + " states");
          }
        }
      }
      stats.layer_sizes.push_back(next.size());
      table.states_.push_back(std::move(next));
      table.links_.push_back(std::move(links));
    }

    FewAgentResult out;
    const auto& last = table.states_.back();
    for (std::size_t k = 0; k < last.size(); ++k) {
      if (accepts(inst, table, last[k])) {
        out.allocation = table.reconstruct(k);
        break;
      }
    }
    out.stats = std::move(stats);
    if (keep_table)
      out.table = std::move(table);
    return out;
  }

  static bool accepts(const Instance& inst, const FewAgentTable& t, const std::vector<Value>& s) {
    const auto n = inst.agents();
    for (Agent j = 0; j < n; ++j) {
      bool empty_column = true;
      for (Agent i = 0; i < n && empty_column; ++i)
        empty_column = t.v(s, i, j) == 0;
      if (empty_column)
        continue;
      for (Agent i = 0; i < n; ++i) {
        if (i == j)
          continue;
        Value rhs = inst.initial(j) + t.v(s, i, j);
        if (t.with_best())
          rhs -= t.p(s, i, j);
        if (inst.initial(i) + t.v(s, i, i) < rhs)
          return false;
      }
    }
    return true;
  }
};
} // namespace detail

inline FewAgentResult dp_exists_ef_init(const Instance& inst, const FewAgentLimits& limits = {},
                                        bool keep_table = false) {
  return detail::FewAgentDp::run(inst, false, limits, keep_table);
}

inline FewAgentResult dp_exists_ef1_init(const Instance& inst, const FewAgentLimits& limits = {},
                                         bool keep_table = false) {
  return detail::FewAgentDp::run(inst, true, limits, keep_table);
}

} // namespace fairinit
