#pragma once

// Exhaustive ground truth. Complete allocations are enumerated as owner
// vectors (owner[r] = agent of resource r) in lexicographic order with
// resource 0 most significant, so the first allocation gives everything to
// agent 0 and "first witness" answers are reproducible.

#include <optional>
#include <span>
#include <vector>

#include "enumerate.hpp"
#include "fairness.hpp"
#include "model.hpp"

namespace fairinit {

inline std::uint64_t count_complete_allocations(const Instance& inst, const Guard& guard = {}) {
  return guarded_power(inst.agents(), inst.resources(), guard, "complete allocation enumeration");
}

// Calls `visit(const Allocation&)` for every complete allocation until it
// returns false. Returns false iff stopped early.
template <class Visitor>
bool for_each_complete_allocation(const Instance& inst, Visitor&& visit, const Guard& guard = {}) {
  count_complete_allocations(inst, guard);
  const auto n = inst.agents();
  if (n == 0)
    return true;
  Odometer odo(n, inst.resources());
  do {
    if (!visit(Allocation::from_owners(odo.digits(), n)))
      return false;
  } while (odo.next());
  return true;
}

inline std::vector<Allocation> enumerate_complete_allocations(const Instance& inst, const Guard& guard = {}) {
  std::vector<Allocation> out;
  out.reserve(count_complete_allocations(inst, guard));
  for_each_complete_allocation(inst, [&](const Allocation& a) {
    out.push_back(a);
    return true;
  }, guard);
  return out;
}

namespace detail {
// Precomputes shares once for mms-init so the enumeration does not redo it.
class NotionTester {
public:
  NotionTester(const Instance& inst, const Notion& notion, const Guard& guard) : inst_(inst), notion_(notion) {
    if (notion.tag == NotionTag::MmsInit)
      for (Agent i = 0; i < inst.agents(); ++i)
        shares_.push_back(compute_mms(inst, i, guard));
  }

  bool operator()(const Allocation& alloc) const {
    if (notion_.tag != NotionTag::MmsInit)
      return satisfies(inst_, alloc, notion_);
    for (Agent i = 0; i < inst_.agents(); ++i) {
      const Value outcome = inst_.initial(i) + bundle_utility(inst_, i, alloc.bundle(i));
      if (compare_products(notion_.alpha->den, outcome, notion_.alpha->num, shares_[i]) < 0)
        return false;
    }
    return true;
  }

private:
  const Instance& inst_;
  Notion notion_;
  std::vector<Value> shares_;
};
} // namespace detail

// First complete allocation satisfying `notion`, or none.
inline std::optional<Allocation> exists_complete(const Instance& inst, const Notion& notion, const Guard& guard = {}) {
  const detail::NotionTester test(inst, notion, guard);
  std::optional<Allocation> found;
  for_each_complete_allocation(inst, [&](const Allocation& a) {
    if (test(a)) {
      found = a;
      return false;
    }
    return true;
  }, guard);
  return found;
}

// First allocation (resources may stay unallocated) satisfying `notion`.
// Enumerates (n+1)^m owner vectors; owner n means "unallocated".
inline std::optional<Allocation> exists_partial(const Instance& inst, const Notion& notion, const Guard& guard = {}) {
  const auto n = inst.agents();
  guarded_power(n + 1, inst.resources(), guard, "partial allocation enumeration");
  const detail::NotionTester test(inst, notion, guard);
  Odometer odo(n + 1, inst.resources());
  do {
    auto alloc = Allocation::from_owners(odo.digits(), n);
    if (test(alloc))
      return alloc;
  } while (odo.next());
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Identical resources: verdicts depend only on how many resources each agent
// holds, so count profiles stand in for labeled allocations.

// Canonical representative: agent 0 takes resources [0, c_0), agent 1 the
// next c_1, and so on.
inline Allocation profile_allocation(std::span<const std::size_t> counts) {
  std::vector<Bundle> bundles(counts.size());
  Resource next = 0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    for (std::size_t k = 0; k < counts[i]; ++k)
      bundles[i].push_back(next++);
  return Allocation(std::move(bundles));
}

// Every count vector with n entries summing to m, lexicographically
// ascending.
template <class Visitor>
bool for_each_count_profile(const Instance& inst, Visitor&& visit) {
  if (!is_identical_resources(inst))
    throw PreconditionViolated("count profiles need identical resources");
  const auto n = inst.agents();
  const auto m = inst.resources();
  if (n == 0)
    return true;
  std::vector<std::size_t> counts(n, 0);
  counts[n - 1] = m;
  while (true) {
    if (!visit(std::as_const(counts)))
      return false;
    // Advance: find the rightmost position k < n-1 that can be incremented,
    // i.e. some of the remaining mass lies to its right.
    std::size_t k = n - 1;
    while (k-- > 0) {
      std::size_t tail = 0;
      for (std::size_t t = k + 1; t < n; ++t)
        tail += counts[t];
      if (tail > 0) {
        ++counts[k];
        for (std::size_t t = k + 1; t < n; ++t)
          counts[t] = 0;
        counts[n - 1] = tail - 1;
        break;
      }
    }
    if (k == static_cast<std::size_t>(-1))
      return true;
  }
}

inline std::vector<std::vector<std::size_t>> enumerate_count_profiles(const Instance& inst) {
  std::vector<std::vector<std::size_t>> out;
  for_each_count_profile(inst, [&](const std::vector<std::size_t>& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

inline std::optional<Allocation> exists_complete_by_profiles(const Instance& inst, const Notion& notion,
                                                             const Guard& guard = {}) {
  const detail::NotionTester test(inst, notion, guard);
  std::optional<Allocation> found;
  for_each_count_profile(inst, [&](const std::vector<std::size_t>& counts) {
    auto alloc = profile_allocation(counts);
    if (test(alloc)) {
      found = std::move(alloc);
      return false;
    }
    return true;
  });
  return found;
}

// Exhaustive check of the diminishing-utilities implication over every
// complete allocation.
inline std::optional<Allocation> diminishing_counterexample(const Instance& inst, const Guard& guard = {}) {
  if (!is_diminishing(inst))
    throw PreconditionViolated("utilities are not diminishing");
  std::optional<Allocation> found;
  for_each_complete_allocation(inst, [&](const Allocation& a) {
    if (auto bad = implies_ef1_init_under_diminishing(inst, std::span(&a, 1))) {
      found = std::move(bad);
      return false;
    }
    return true;
  }, guard);
  return found;
}

} // namespace fairinit
