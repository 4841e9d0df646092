#pragma once

// Instance/allocation data model shared by every other header.
//
// Agents and resources are identified by their 0-based index. Utilities are
// additive: an agent's value for a bundle is the sum of its per-resource
// values. All quantities are non-negative 64-bit integers.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exact.hpp"

namespace fairinit {

using Agent = std::size_t;
using Resource = std::size_t;
// Resource indices, kept sorted ascending.
using Bundle = std::vector<Resource>;

class Instance {
public:
  Instance() = default;

  // `rows[i][r]` is agent i's utility for resource r; every row must have
  // exactly `resources` entries and every value must be non-negative.
  // Structural assumptions (n >= 2, no all-zero row/column) are not
  // enforced here; see validate_instance().
  Instance(std::size_t resources, std::vector<Value> initial, const std::vector<std::vector<Value>>& rows)
      : m_(resources), initial_(std::move(initial)) {
    if (rows.size() != initial_.size())
      throw InputError("utility matrix has " + std::to_string(rows.size()) + " rows for " +
                       std::to_string(initial_.size()) + " agents");
    utility_.reserve(initial_.size() * m_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m_)
        throw InputError("agent " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                         " utilities, expected " + std::to_string(m_));
      if (initial_[i] < 0)
        throw InputError("agent " + std::to_string(i) + " has a negative initial utility");
      for (Value x : rows[i]) {
        if (x < 0)
          throw InputError("agent " + std::to_string(i) + " has a negative utility");
        utility_.push_back(x);
      }
    }
  }

  // Identical resources: agent i values every resource at `value[i]`.
  static Instance identical(std::size_t resources, std::vector<Value> initial, const std::vector<Value>& value) {
    std::vector<std::vector<Value>> rows;
    rows.reserve(value.size());
    for (Value v : value)
      rows.emplace_back(resources, v);
    return Instance(resources, std::move(initial), rows);
  }

  std::size_t agents() const noexcept { return initial_.size(); }
  std::size_t resources() const noexcept { return m_; }

  Value initial(Agent i) const { return initial_[i]; }
  std::span<const Value> initials() const noexcept { return initial_; }

  // Unchecked; use bundle_utility() for checked access.
  Value utility(Agent i, Resource r) const { return utility_[i * m_ + r]; }
  std::span<const Value> row(Agent i) const { return {utility_.data() + i * m_, m_}; }

  friend bool operator==(const Instance&, const Instance&) = default;

private:
  std::size_t m_ = 0;
  std::vector<Value> initial_;
  std::vector<Value> utility_;
};

// ---------------------------------------------------------------------------
// Validation

enum class IssueKind { TooFewAgents, NoResources, AgentValuesNothing, ResourceValuedByNobody };

struct Issue {
  IssueKind kind;
  std::size_t index = 0; // agent or resource, where applicable
  std::string message;
};

struct ValidationResult {
  std::vector<Issue> issues;
  bool ok() const noexcept { return issues.empty(); }
};

// Reports every violated structural assumption. Never throws.
inline ValidationResult validate_instance(const Instance& inst) {
  ValidationResult out;
  const auto n = inst.agents();
  const auto m = inst.resources();
  if (n < 2)
    out.issues.push_back({IssueKind::TooFewAgents, n, "fewer than two agents"});
  if (m < 1)
    out.issues.push_back({IssueKind::NoResources, 0, "no resources"});
  for (Agent i = 0; i < n; ++i) {
    const auto row = inst.row(i);
    if (m > 0 && std::all_of(row.begin(), row.end(), [](Value x) { return x == 0; }))
      out.issues.push_back({IssueKind::AgentValuesNothing, i, "agent " + std::to_string(i) + " values no resource"});
  }
  for (Resource r = 0; r < m; ++r) {
    bool valued = false;
    for (Agent i = 0; i < n && !valued; ++i)
      valued = inst.utility(i, r) > 0;
    if (!valued)
      out.issues.push_back(
          {IssueKind::ResourceValuedByNobody, r, "resource " + std::to_string(r) + " is valued by no agent"});
  }
  return out;
}

// Strict mode: throws PreconditionViolated listing every issue.
inline void require_valid(const Instance& inst) {
  const auto result = validate_instance(inst);
  if (result.ok())
    return;
  std::string msg = "instance violates structural assumptions:";
  for (const auto& issue : result.issues)
    msg += " " + issue.message + ";";
  throw PreconditionViolated(msg);
}

// ---------------------------------------------------------------------------
// Allocation

class Allocation {
public:
  Allocation() = default;
  explicit Allocation(std::size_t agents) : bundles_(agents) {}
  explicit Allocation(std::vector<Bundle> bundles) : bundles_(std::move(bundles)) {
    for (auto& b : bundles_)
      std::sort(b.begin(), b.end());
  }

  // `owner[r]` is the agent holding resource r; `owner[r] == agents` leaves
  // r unallocated.
  static Allocation from_owners(std::span<const Agent> owner, std::size_t agents) {
    Allocation out(agents);
    for (Resource r = 0; r < owner.size(); ++r)
      if (owner[r] < agents)
        out.bundles_[owner[r]].push_back(r);
    return out;
  }

  std::size_t agents() const noexcept { return bundles_.size(); }
  const Bundle& bundle(Agent i) const { return bundles_.at(i); }
  std::span<const Bundle> bundles() const noexcept { return bundles_; }

  void give(Agent i, Resource r) {
    auto& b = bundles_.at(i);
    b.insert(std::upper_bound(b.begin(), b.end(), r), r);
  }

  std::size_t allocated() const noexcept {
    std::size_t total = 0;
    for (const auto& b : bundles_)
      total += b.size();
    return total;
  }

  friend bool operator==(const Allocation&, const Allocation&) = default;

private:
  std::vector<Bundle> bundles_;
};

// Throws InputError unless `alloc` has one bundle per agent, references only
// resources in [0, m), and its bundles are pairwise disjoint.
inline void validate_allocation(const Instance& inst, const Allocation& alloc) {
  if (alloc.agents() != inst.agents())
    throw InputError("allocation has " + std::to_string(alloc.agents()) + " bundles for " +
                     std::to_string(inst.agents()) + " agents");
  std::vector<bool> seen(inst.resources(), false);
  for (Agent i = 0; i < alloc.agents(); ++i) {
    for (Resource r : alloc.bundle(i)) {
      if (r >= inst.resources())
        throw InputError("resource index " + std::to_string(r) + " out of range");
      if (seen[r])
        throw InputError("resource " + std::to_string(r) + " is allocated twice");
      seen[r] = true;
    }
  }
}

inline bool is_complete(const Instance& inst, const Allocation& alloc) {
  validate_allocation(inst, alloc);
  return alloc.allocated() == inst.resources();
}

inline Value bundle_utility(const Instance& inst, Agent agent, std::span<const Resource> bundle) {
  if (agent >= inst.agents())
    throw InputError("agent index " + std::to_string(agent) + " out of range");
  Value total = 0;
  for (Resource r : bundle) {
    if (r >= inst.resources())
      throw InputError("resource index " + std::to_string(r) + " out of range");
    total += inst.utility(agent, r);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Levels

// Agents grouped by equal initial utility, groups ordered by strictly
// increasing initial utility, ascending agent id inside a group.
struct LevelPartition {
  std::vector<std::vector<Agent>> levels;
  std::vector<Value> values;
  std::vector<std::size_t> level_of; // per agent

  std::size_t size() const noexcept { return levels.size(); }
};

inline LevelPartition compute_levels(const Instance& inst) {
  std::vector<Agent> order(inst.agents());
  for (Agent i = 0; i < order.size(); ++i)
    order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](Agent a, Agent b) { return inst.initial(a) < inst.initial(b); });

  LevelPartition out;
  out.level_of.resize(inst.agents());
  for (Agent i : order) {
    if (out.values.empty() || out.values.back() != inst.initial(i)) {
      out.values.push_back(inst.initial(i));
      out.levels.emplace_back();
    }
    out.levels.back().push_back(i);
    out.level_of[i] = out.levels.size() - 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Instance predicates

inline bool is_identical_resources(const Instance& inst) {
  for (Agent i = 0; i < inst.agents(); ++i) {
    const auto row = inst.row(i);
    if (std::adjacent_find(row.begin(), row.end(), std::not_equal_to<>{}) != row.end())
      return false;
  }
  return true;
}

// b_i < b_j implies u_i(r) >= u_j(r) for every resource r.
inline bool is_diminishing(const Instance& inst) {
  const auto levels = compute_levels(inst);
  // Suffices to compare the per-resource minimum over all lower levels with
  // the maximum of the current level.
  const auto m = inst.resources();
  std::vector<Value> lower_min;
  for (std::size_t h = 0; h < levels.size(); ++h) {
    std::vector<Value> level_max(m, 0), level_min(m, 0);
    bool first = true;
    for (Agent a : levels.levels[h]) {
      for (Resource r = 0; r < m; ++r) {
        const Value x = inst.utility(a, r);
        level_max[r] = first ? x : std::max(level_max[r], x);
        level_min[r] = first ? x : std::min(level_min[r], x);
      }
      first = false;
    }
    if (h > 0) {
      for (Resource r = 0; r < m; ++r) {
        if (level_max[r] > lower_min[r])
          return false;
        lower_min[r] = std::min(lower_min[r], level_min[r]);
      }
    } else {
      lower_min = level_min;
    }
  }
  return true;
}

} // namespace fairinit
