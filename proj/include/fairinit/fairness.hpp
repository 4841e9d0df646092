#pragma once

// Exact checkers for the envy-based notions (EF, EF1, EF-init, EF1-init, the
// per-pair X* relaxation, min-EF1-init and its bundle-level strengthening)
// and the max-min-share notion with initial utilities.
//
// Envy notions for an ordered pair (i, j) with X_j non-empty:
//
//   EF          u_i(X_i)       >= u_i(X_j)
//   EF1         u_i(X_i)       >= u_i(X_j \ {r})                     some r in X_j
//   EF-init     b_i + u_i(X_i) >= b_j + u_i(X_j)
//   EF1-init    b_i + u_i(X_i) >= b_j + u_i(X_j \ {r})               some r in X_j
//
// The three relaxations coincide with EF1-init when b_i <= b_j. When
// b_i > b_j they instead ask for r in X_j and X* subset of X_j with
//
//   u_i(X_i) >= u_i(X_j \ (X* u {r}))   and   weight(X*) < b_i - b_j
//
// where weight(X*) is
//   eq1-relax     u_j(X*)
//   min-ef1-init  sum over r' in X* of min{ u_k(r') : b_k < b_i }
//   strong-c2     min{ u_k(X*) : b_k < b_i }
//
// Every notion is satisfied for a pair whose X_j is empty.

#include <algorithm>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "enumerate.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "knapsack.hpp"
#include "model.hpp"

namespace fairinit {

enum class NotionTag { Ef, Ef1, EfInit, Ef1Init, Eq1Relax, MinEf1Init, StrongC2Experimental, MmsInit };

struct Notion {
  NotionTag tag = NotionTag::Ef1Init;
  std::optional<Ratio> alpha; // only for MmsInit

  Notion() = default;
  Notion(NotionTag t) : tag(t) { // NOLINT: implicit on purpose, a bare tag is a notion
    if (t == NotionTag::MmsInit)
      alpha = Ratio(1);
  }
  Notion(NotionTag t, Ratio a) : tag(t), alpha(a) {
    if (t != NotionTag::MmsInit)
      throw InputError("alpha is only meaningful for mms-init");
    require_alpha(a);
  }

  static void require_alpha(const Ratio& a) {
    if (a.num <= 0 || a.den < a.num)
      throw InputError("alpha must satisfy 0 < alpha <= 1, got " + a.str());
  }
};

inline std::string_view notion_name(NotionTag tag) {
  switch (tag) {
  case NotionTag::Ef: return "ef";
  case NotionTag::Ef1: return "ef1";
  case NotionTag::EfInit: return "ef-init";
  case NotionTag::Ef1Init: return "ef1-init";
  case NotionTag::Eq1Relax: return "eq1-relax";
  case NotionTag::MinEf1Init: return "min-ef1-init";
  case NotionTag::StrongC2Experimental: return "strong-c2";
  case NotionTag::MmsInit: return "mms-init";
  }
  return "?";
}

inline NotionTag parse_notion(std::string_view name) {
  for (auto tag : {NotionTag::Ef, NotionTag::Ef1, NotionTag::EfInit, NotionTag::Ef1Init, NotionTag::Eq1Relax,
                   NotionTag::MinEf1Init, NotionTag::StrongC2Experimental, NotionTag::MmsInit})
    if (notion_name(tag) == name)
      return tag;
  throw InputError("unknown notion '" + std::string(name) + "'");
}

// Outcome for one ordered pair. `margin` is the slack of the deciding
// inequality at the best witness (>= 0 iff satisfied); it is 0 when X_j is
// empty. Witness fields are set only on satisfied verdicts.
struct PairVerdict {
  bool ok = true;
  std::optional<Resource> removed;
  std::optional<Bundle> xstar;
  Value margin = 0;
};

struct PairEntry {
  Agent i;
  Agent j;
  PairVerdict verdict;
};

struct EnvyReport {
  Notion notion;
  bool satisfied = true;
  std::vector<PairEntry> pairs; // every ordered pair, i-major

  std::vector<PairEntry> violations() const {
    std::vector<PairEntry> out;
    std::copy_if(pairs.begin(), pairs.end(), std::back_inserter(out), [](const auto& p) { return !p.verdict.ok; });
    return out;
  }
};

// Witness for (C2) of min-EF1-init.
struct C2Witness {
  Resource removed;
  Bundle xstar;
  Value weight; // sum of per-resource minimum weights over xstar; < b_i - b_j
};

namespace detail {

// Highest-valued resource of `bundle` for agent i, lowest index on ties.
inline Resource best_single(const Instance& inst, Agent i, const Bundle& bundle) {
  Resource best = bundle.front();
  for (Resource r : bundle)
    if (inst.utility(i, r) > inst.utility(i, best))
      best = r;
  return best;
}

// Per-resource min{ u_k(r) : b_k < b_i }. Requires some agent below i.
inline std::vector<Value> lower_min_weights(const Instance& inst, Agent i) {
  std::vector<Value> w(inst.resources(), 0);
  bool any = false;
  for (Agent k = 0; k < inst.agents(); ++k) {
    if (inst.initial(k) >= inst.initial(i))
      continue;
    for (Resource r = 0; r < inst.resources(); ++r)
      w[r] = any ? std::min(w[r], inst.utility(k, r)) : inst.utility(k, r);
    any = true;
  }
  if (!any)
    throw PreconditionViolated("no agent has a lower initial utility than agent " + std::to_string(i));
  return w;
}

struct Relief {
  Value slack;      // u_i(X_i) - u_i(X_j \ (X* u {r}))
  Resource removed;
  Bundle xstar;
};

// Best (r, X*) over r in X_j and X* in X_j \ {r} with sum of weight[r'] <=
// budget, maximising the slack. Ties go to the lowest r. X_j non-empty.
inline Relief best_relief(const Instance& inst, Agent i, Value own, const Bundle& xj,
                          std::span<const Value> weight, Value budget) {
  const Value total = bundle_utility(inst, i, xj);
  std::optional<Relief> best;
  std::vector<Value> ws, vs;
  std::vector<Resource> rest;
  for (std::size_t skip = 0; skip < xj.size(); ++skip) {
    ws.clear();
    vs.clear();
    rest.clear();
    for (std::size_t k = 0; k < xj.size(); ++k) {
      if (k == skip)
        continue;
      rest.push_back(xj[k]);
      ws.push_back(weight[xj[k]]);
      vs.push_back(inst.utility(i, xj[k]));
    }
    const auto sol = max_value_knapsack(ws, vs, budget);
    const Value slack = own - (total - inst.utility(i, xj[skip]) - sol.value);
    if (!best || slack > best->slack) {
      Bundle xstar;
      for (auto k : sol.chosen)
        xstar.push_back(rest[k]);
      best = Relief{slack, xj[skip], std::move(xstar)};
    }
  }
  return *best;
}

inline PairVerdict ef1_style(const Instance& inst, Agent i, Agent j, const Bundle& xi, const Bundle& xj,
                             bool with_initial) {
  const Resource r = best_single(inst, i, xj);
  Value lhs = bundle_utility(inst, i, xi);
  Value rhs = bundle_utility(inst, i, xj) - inst.utility(i, r);
  if (with_initial) {
    lhs += inst.initial(i);
    rhs += inst.initial(j);
  }
  PairVerdict out;
  out.margin = lhs - rhs;
  out.ok = out.margin >= 0;
  if (out.ok)
    out.removed = r;
  return out;
}

inline PairVerdict from_relief(const Relief& relief) {
  PairVerdict out;
  out.margin = relief.slack;
  out.ok = relief.slack >= 0;
  if (out.ok) {
    out.removed = relief.removed;
    out.xstar = relief.xstar;
  }
  return out;
}

inline void check_pair_indices(const Instance& inst, Agent i, Agent j) {
  if (i >= inst.agents() || j >= inst.agents())
    throw InputError("agent index out of range");
  if (i == j)
    throw InputError("a pair needs two distinct agents");
}

} // namespace detail

// Optimal (C2) witness search: a witness is returned iff one exists.
// Requires b_i > b_j and X_j non-empty.
inline std::optional<C2Witness> solve_c2(const Instance& inst, const Allocation& alloc, Agent i, Agent j) {
  detail::check_pair_indices(inst, i, j);
  const auto& xj = alloc.bundle(j);
  if (inst.initial(i) <= inst.initial(j))
    throw PreconditionViolated("(C2) applies only when b_i > b_j");
  if (xj.empty())
    throw PreconditionViolated("(C2) needs a non-empty X_j");
  const auto weight = detail::lower_min_weights(inst, i);
  const Value own = bundle_utility(inst, i, alloc.bundle(i));
  auto relief = detail::best_relief(inst, i, own, xj, weight, inst.initial(i) - inst.initial(j) - 1);
  if (relief.slack < 0)
    return std::nullopt;
  Value w = 0;
  for (Resource r : relief.xstar)
    w += weight[r];
  return C2Witness{relief.removed, std::move(relief.xstar), w};
}

inline PairVerdict check_pair(const Instance& inst, const Allocation& alloc, Agent i, Agent j, const Notion& notion) {
  detail::check_pair_indices(inst, i, j);
  const auto& xi = alloc.bundle(i);
  const auto& xj = alloc.bundle(j);
  if (notion.tag == NotionTag::MmsInit)
    throw PreconditionViolated("mms-init is not a pairwise notion; use check_mms_init");
  if (xj.empty())
    return PairVerdict{};

  switch (notion.tag) {
  case NotionTag::Ef: {
    PairVerdict out;
    out.margin = bundle_utility(inst, i, xi) - bundle_utility(inst, i, xj);
    out.ok = out.margin >= 0;
    return out;
  }
  case NotionTag::EfInit: {
    PairVerdict out;
    out.margin = inst.initial(i) + bundle_utility(inst, i, xi) - inst.initial(j) - bundle_utility(inst, i, xj);
    out.ok = out.margin >= 0;
    return out;
  }
  case NotionTag::Ef1:
    return detail::ef1_style(inst, i, j, xi, xj, false);
  case NotionTag::Ef1Init:
    return detail::ef1_style(inst, i, j, xi, xj, true);
  default:
    break;
  }

  // Relaxations: (C1) when b_i <= b_j.
  if (inst.initial(i) <= inst.initial(j))
    return detail::ef1_style(inst, i, j, xi, xj, true);

  const Value budget = inst.initial(i) - inst.initial(j) - 1;
  const Value own = bundle_utility(inst, i, xi);
  switch (notion.tag) {
  case NotionTag::Eq1Relax:
    return detail::from_relief(detail::best_relief(inst, i, own, xj, inst.row(j), budget));
  case NotionTag::MinEf1Init: {
    const auto weight = detail::lower_min_weights(inst, i);
    return detail::from_relief(detail::best_relief(inst, i, own, xj, weight, budget));
  }
  case NotionTag::StrongC2Experimental: {
    // min_k u_k(X*) <= budget  iff  u_k(X*) <= budget for some lower agent k.
    std::optional<detail::Relief> best;
    for (Agent k = 0; k < inst.agents(); ++k) {
      if (inst.initial(k) >= inst.initial(i))
        continue;
      auto relief = detail::best_relief(inst, i, own, xj, inst.row(k), budget);
      if (!best || relief.slack > best->slack)
        best = std::move(relief);
    }
    return detail::from_relief(*best);
  }
  default:
    break;
  }
  throw InputError("unsupported notion");
}

inline PairVerdict check_eq1_relaxation(const Instance& inst, const Allocation& alloc, Agent i, Agent j) {
  return check_pair(inst, alloc, i, j, NotionTag::Eq1Relax);
}

// Experimental bundle-level strengthening of (C2). Whether it is always
// satisfiable is open; it exists for counterexample search only.
inline PairVerdict check_strong_c2(const Instance& inst, const Allocation& alloc, Agent i, Agent j) {
  return check_pair(inst, alloc, i, j, NotionTag::StrongC2Experimental);
}

// ---------------------------------------------------------------------------
// Max-min share with initial utilities

// mu_i = max over complete allocations of min_j (b_j + u_i(X_j)), by
// enumerating all n^m assignments.
inline Value compute_mms_exhaustive(const Instance& inst, Agent i, const Guard& guard = {}) {
  if (i >= inst.agents())
    throw InputError("agent index out of range");
  const auto n = inst.agents();
  const auto m = inst.resources();
  guarded_power(n, m, guard, "mms enumeration");
  Odometer odo(n, m);
  Value best = -1;
  std::vector<Value> outcome(n);
  do {
    for (Agent j = 0; j < n; ++j)
      outcome[j] = inst.initial(j);
    for (Resource r = 0; r < m; ++r)
      outcome[odo.digits()[r]] += inst.utility(i, r);
    best = std::max(best, *std::min_element(outcome.begin(), outcome.end()));
  } while (odo.next());
  return best;
}

// Identical-resource share: every resource is worth v to agent i, so only
// the counts matter. Handing each resource to the currently poorest bundle
// maximises the minimum.
inline Value compute_mms_identical(const Instance& inst, Agent i) {
  if (i >= inst.agents())
    throw InputError("agent index out of range");
  if (!is_identical_resources(inst))
    throw PreconditionViolated("identical-resource share needs identical resources");
  const auto n = inst.agents();
  std::vector<Value> outcome(inst.initials().begin(), inst.initials().end());
  if (n == 0)
    return 0;
  const Value v = inst.resources() > 0 ? inst.utility(i, 0) : 0;
  for (Resource r = 0; r < inst.resources() && v > 0; ++r)
    *std::min_element(outcome.begin(), outcome.end()) += v;
  return *std::min_element(outcome.begin(), outcome.end());
}

inline Value compute_mms(const Instance& inst, Agent i, const Guard& guard = {}) {
  return is_identical_resources(inst) ? compute_mms_identical(inst, i) : compute_mms_exhaustive(inst, i, guard);
}

struct MmsAgentVerdict {
  Agent agent;
  Value share;   // mu_i
  Value outcome; // b_i + u_i(X_i)
  bool ok;       // outcome >= alpha * share
};

struct MmsReport {
  Ratio alpha;
  bool satisfied = true;
  std::vector<MmsAgentVerdict> agents;
};

// b_i + u_i(X_i) >= alpha * mu_i for all i, compared as q*outcome >= p*mu_i.
inline MmsReport check_mms_init(const Instance& inst, const Allocation& alloc, Ratio alpha,
                                const Guard& guard = {}) {
  Notion::require_alpha(alpha);
  validate_allocation(inst, alloc);
  MmsReport out{alpha, true, {}};
  for (Agent i = 0; i < inst.agents(); ++i) {
    const Value share = compute_mms(inst, i, guard);
    const Value outcome = inst.initial(i) + bundle_utility(inst, i, alloc.bundle(i));
    const bool ok = compare_products(alpha.den, outcome, alpha.num, share) >= 0;
    out.agents.push_back({i, share, outcome, ok});
    out.satisfied = out.satisfied && ok;
  }
  return out;
}

// Counting certificate for identical resources: agent i needs at least
// required[i] resources to reach alpha * mu_i. When the total exceeds m no
// alpha-MMS-init allocation exists (and conversely, any count vector that
// meets every requirement within m resources is one).
struct MmsCountCertificate {
  Ratio alpha;
  std::vector<Value> shares;
  std::vector<Value> required;
  Value total_required = 0;
  bool impossible = false;
};

inline MmsCountCertificate mms_count_certificate(const Instance& inst, Ratio alpha) {
  Notion::require_alpha(alpha);
  MmsCountCertificate out{alpha, {}, {}, 0, false};
  const auto m = static_cast<Value>(inst.resources());
  for (Agent i = 0; i < inst.agents(); ++i) {
    const Value share = compute_mms_identical(inst, i);
    const Value v = m > 0 ? inst.utility(i, 0) : 0;
    // smallest c >= 0 with q * (b_i + v*c) >= p * share
    const Wide deficit = static_cast<Wide>(alpha.num) * share - static_cast<Wide>(alpha.den) * inst.initial(i);
    Value need = 0;
    if (deficit > 0) {
      if (v == 0) {
        need = m + 1;
      } else {
        const Wide step = static_cast<Wide>(alpha.den) * v;
        const Wide c = (deficit + step - 1) / step;
        need = c > m ? m + 1 : static_cast<Value>(c);
      }
    }
    out.shares.push_back(share);
    out.required.push_back(need);
    out.total_required += need;
  }
  out.impossible = out.total_required > m;
  return out;
}

// ---------------------------------------------------------------------------
// Whole-allocation checks

// True iff every ordered pair passes; stops at the first violation.
inline bool satisfies(const Instance& inst, const Allocation& alloc, const Notion& notion, const Guard& guard = {}) {
  if (notion.tag == NotionTag::MmsInit)
    return check_mms_init(inst, alloc, *notion.alpha, guard).satisfied;
  for (Agent i = 0; i < inst.agents(); ++i)
    for (Agent j = 0; j < inst.agents(); ++j)
      if (i != j && !check_pair(inst, alloc, i, j, notion).ok)
        return false;
  return true;
}

// Verdicts for all ordered pairs. For mms-init the entries are per agent
// (i == j) with margin q*outcome - p*share.
inline EnvyReport check_allocation(const Instance& inst, const Allocation& alloc, const Notion& notion,
                                   const Guard& guard = {}) {
  validate_allocation(inst, alloc);
  EnvyReport out;
  out.notion = notion;
  if (notion.tag == NotionTag::MmsInit) {
    const auto mms = check_mms_init(inst, alloc, *notion.alpha, guard);
    for (const auto& a : mms.agents) {
      PairVerdict v;
      v.ok = a.ok;
      v.margin = static_cast<Value>(static_cast<Wide>(notion.alpha->den) * a.outcome -
                                    static_cast<Wide>(notion.alpha->num) * a.share);
      out.pairs.push_back({a.agent, a.agent, v});
    }
    out.satisfied = mms.satisfied;
    return out;
  }
  for (Agent i = 0; i < inst.agents(); ++i) {
    for (Agent j = 0; j < inst.agents(); ++j) {
      if (i == j)
        continue;
      auto verdict = check_pair(inst, alloc, i, j, notion);
      out.satisfied = out.satisfied && verdict.ok;
      out.pairs.push_back({i, j, std::move(verdict)});
    }
  }
  return out;
}

// For diminishing utilities, min-EF1-init implies EF1-init. Returns the
// first allocation in `allocations` that breaks the implication.
inline std::optional<Allocation> implies_ef1_init_under_diminishing(const Instance& inst,
                                                                    std::span<const Allocation> allocations) {
  if (!is_diminishing(inst))
    throw PreconditionViolated("utilities are not diminishing");
  for (const auto& alloc : allocations)
    if (satisfies(inst, alloc, NotionTag::MinEf1Init) && !satisfies(inst, alloc, NotionTag::Ef1Init))
      return alloc;
  return std::nullopt;
}

} // namespace fairinit
