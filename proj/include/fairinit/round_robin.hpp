#pragma once

// Round robin with initial utilities. Only the lowest level starts active.
// After every pick, once each active agent has reached (b_i + u_i(X_i) >= b)
// the initial utility b of the lowest inactive level, that level joins the
// picking order right after the agents that already picked this round.
// Produces a complete min-EF1-init allocation plus a replayable trace.

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fairness.hpp"
#include "model.hpp"

namespace fairinit {

struct PickEvent {
  Agent agent;
  Resource resource;
  std::size_t round; // 1-based
  friend bool operator==(const PickEvent&, const PickEvent&) = default;
};

struct ActivateEvent {
  std::size_t level;      // 0-based index into compute_levels()
  std::size_t insert_pos; // agents of the level start at this index of the order
  friend bool operator==(const ActivateEvent&, const ActivateEvent&) = default;
};

using TraceEvent = std::variant<PickEvent, ActivateEvent>;

struct PickTrace {
  std::vector<TraceEvent> events;
  std::vector<Agent> final_order;
  friend bool operator==(const PickTrace&, const PickTrace&) = default;
};

struct RoundRobinResult {
  Allocation allocation;
  PickTrace trace;
};

namespace detail {

// Lowest inactive level if every active agent has reached it.
inline std::optional<std::size_t> due_level(const LevelPartition& levels,
                                            const std::vector<bool>& level_active, const std::vector<Agent>& order,
                                            const std::vector<Value>& total) {
  std::size_t next = 0;
  while (next < levels.size() && level_active[next])
    ++next;
  if (next == levels.size())
    return std::nullopt;
  for (Agent a : order)
    if (total[a] < levels.values[next])
      return std::nullopt;
  return next;
}

// Unallocated resource the agent values most, lowest index on ties.
inline std::optional<Resource> favourite(const Instance& inst, Agent a, const std::vector<bool>& taken) {
  std::optional<Resource> best;
  for (Resource r = 0; r < inst.resources(); ++r)
    if (!taken[r] && (!best || inst.utility(a, r) > inst.utility(a, *best)))
      best = r;
  return best;
}

} // namespace detail

inline RoundRobinResult run_round_robin(const Instance& inst) {
  require_valid(inst);
  const auto levels = compute_levels(inst);
  const auto m = inst.resources();

  RoundRobinResult out{Allocation(inst.agents()), {}};
  std::vector<bool> taken(m, false), level_active(levels.size(), false);
  std::vector<Value> total(inst.initials().begin(), inst.initials().end());
  std::vector<Agent> order = levels.levels[0];
  level_active[0] = true;

  std::size_t left = m, pos = 0, round = 1;
  while (left > 0) {
    if (pos == order.size()) {
      pos = 0;
      ++round;
    }
    const Agent a = order[pos++];
    const Resource r = *detail::favourite(inst, a, taken);
    taken[r] = true;
    --left;
    total[a] += inst.utility(a, r);
    out.allocation.give(a, r);
    out.trace.events.push_back(PickEvent{a, r, round});
    if (left == 0)
      break;
    if (auto lvl = detail::due_level(levels, level_active, order, total)) {
      level_active[*lvl] = true;
      const auto& joining = levels.levels[*lvl];
      order.insert(order.begin() + static_cast<std::ptrdiff_t>(pos), joining.begin(), joining.end());
      out.trace.events.push_back(ActivateEvent{*lvl, pos});
    }
  }
  out.trace.final_order = std::move(order);
  return out;
}

struct TraceCheck {
  bool ok = true;
  std::size_t event = 0; // index of the first offending event (events.size() for end-of-trace problems)
  std::string reason;
};

// Replays `trace` against the rules from scratch and reports the first event
// that the algorithm could not have produced.
inline TraceCheck verify_trace(const Instance& inst, const PickTrace& trace) {
  const auto levels = compute_levels(inst);
  const auto m = inst.resources();
  const auto fail = [](std::size_t k, std::string why) { return TraceCheck{false, k, std::move(why)}; };
  if (levels.size() == 0)
    return trace.events.empty() ? TraceCheck{} : fail(0, "instance has no agents");

  std::vector<bool> taken(m, false), level_active(levels.size(), false);
  std::vector<Value> total(inst.initials().begin(), inst.initials().end());
  std::vector<Bundle> bundles(inst.agents());
  std::vector<Agent> order = levels.levels[0];
  level_active[0] = true;
  std::size_t left = m, pos = 0, round = 1;
  std::optional<std::size_t> due; // activation owed right now
  std::optional<PickEvent> last_pick;

  for (std::size_t k = 0; k < trace.events.size(); ++k) {
    const auto& ev = trace.events[k];
    if (const auto* pick = std::get_if<PickEvent>(&ev)) {
      if (due)
        return fail(k, "level " + std::to_string(*due) + " should have been activated before this pick");
      if (left == 0)
        return fail(k, "pick after all resources were allocated");
      if (pos == order.size()) {
        pos = 0;
        ++round;
      }
      if (pick->agent != order[pos])
        return fail(k, "agent " + std::to_string(pick->agent) + " picked but agent " + std::to_string(order[pos]) +
                           " is next");
      if (pick->round != round)
        return fail(k, "round " + std::to_string(pick->round) + " recorded, expected " + std::to_string(round));
      if (pick->resource >= m || taken[pick->resource])
        return fail(k, "resource " + std::to_string(pick->resource) + " is not available");
      const auto best = detail::favourite(inst, pick->agent, taken);
      if (inst.utility(pick->agent, pick->resource) != inst.utility(pick->agent, *best))
        return fail(k, "resource " + std::to_string(pick->resource) + " is not a favourite of the picker");
      ++pos;
      taken[pick->resource] = true;
      --left;
      total[pick->agent] += inst.utility(pick->agent, pick->resource);
      bundles[pick->agent].push_back(pick->resource);
      last_pick = *pick;
      if (left > 0)
        due = detail::due_level(levels, level_active, order, total);
      continue;
    }

    const auto& act = std::get<ActivateEvent>(ev);
    if (!due)
      return fail(k, "activation of level " + std::to_string(act.level) + " is not due");
    if (act.level != *due)
      return fail(k, "activated level " + std::to_string(act.level) + " instead of " + std::to_string(*due));
    if (act.insert_pos != pos)
      return fail(k, "inserted at " + std::to_string(act.insert_pos) + ", expected " + std::to_string(pos));
    // The picker had not yet reached the new level before its last pick.
    const Agent j = last_pick->agent;
    const Value before = total[j] - inst.initial(j) - inst.utility(j, last_pick->resource);
    for (Agent i : levels.levels[act.level])
      if (before >= inst.initial(i) - inst.initial(j))
        return fail(k, "agent " + std::to_string(j) + " had already reached agent " + std::to_string(i) +
                           " before its last pick");
    level_active[act.level] = true;
    const auto& joining = levels.levels[act.level];
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(pos), joining.begin(), joining.end());
    due.reset();
  }

  const auto end = trace.events.size();
  if (due)
    return fail(end, "trace ends with level " + std::to_string(*due) + " owed an activation");
  if (left != 0)
    return fail(end, std::to_string(left) + " resources never picked");
  if (order != trace.final_order)
    return fail(end, "final order does not match the replay");
  return {};
}

// At every activation of an agent i, each active agent j with b_j <= b_i
// either holds nothing or holds a bundle X_j with some r such that the
// lower-minimum weight of X_j \ {r} is below b_i - b_j.
inline bool check_activation_gap(const Instance& inst, const PickTrace& trace) {
  const auto levels = compute_levels(inst);
  std::vector<Bundle> bundles(inst.agents());
  std::vector<Agent> active = levels.size() ? levels.levels[0] : std::vector<Agent>{};
  for (const auto& ev : trace.events) {
    if (const auto* pick = std::get_if<PickEvent>(&ev)) {
      bundles[pick->agent].push_back(pick->resource);
      continue;
    }
    const auto& act = std::get<ActivateEvent>(ev);
    active.insert(active.end(), levels.levels[act.level].begin(), levels.levels[act.level].end());
    for (Agent i : levels.levels[act.level]) {
      const auto weight = detail::lower_min_weights(inst, i);
      for (Agent j : active) {
        if (j == i || inst.initial(j) > inst.initial(i) || bundles[j].empty())
          continue;
        Value sum = 0, heaviest = 0;
        for (Resource r : bundles[j]) {
          sum += weight[r];
          heaviest = std::max(heaviest, weight[r]);
        }
        if (sum - heaviest >= inst.initial(i) - inst.initial(j))
          return false;
      }
    }
  }
  return true;
}

} // namespace fairinit
