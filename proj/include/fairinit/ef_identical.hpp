#pragma once

// EF-init existence for identical resources in polynomial time.
//
// With identical resources agent i values every resource at v_i, so an
// allocation is described by counts. Levels are the groups of agents sharing
// an initial utility, ordered by increasing b (1-based here, as L_1..L_t).
// A pair i, j with b_i < b_j and v_i < v_j is "violating": in any EF-init
// allocation the higher agent j, and everyone at its level or above, gets
// nothing. h* is the lowest level holding such a j (t+1 if none), t* = h*-1,
// and k_h caps the count of a level-h agent so nobody above t* envies it.
//
// The table D[a][b][c] says whether some allocation of exactly a resources to
// levels 1..b, c each to every L_b agent, is envy-free among those levels and
// within the caps. Moving between adjacent levels only has to check one pair
// of agents (the extreme values), because EF-init is transitive across levels
// below h*.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exact.hpp"
#include "model.hpp"

namespace fairinit {

struct LevelAnalysis {
  LevelPartition levels;
  std::vector<Value> value;                        // v_i per agent
  std::vector<std::pair<Agent, Agent>> violating;  // (lower, higher), lower-major
  std::size_t h_star = 0;                          // 1-based; levels.size()+1 if no violating pair
  std::size_t t_star = 0;
  std::vector<std::size_t> k;                      // cap per level, k[h-1]; 0 for levels above t*
};

inline LevelAnalysis analyze_levels(const Instance& inst) {
  if (!is_identical_resources(inst))
    throw PreconditionViolated("level analysis needs identical resources");
  require_valid(inst);

  LevelAnalysis out;
  out.levels = compute_levels(inst);
  const auto n = inst.agents();
  const auto m = inst.resources();
  const auto t = out.levels.size();
  for (Agent i = 0; i < n; ++i)
    out.value.push_back(inst.utility(i, 0));

  out.h_star = t + 1;
  for (Agent i = 0; i < n; ++i) {
    for (Agent j = 0; j < n; ++j) {
      if (inst.initial(i) < inst.initial(j) && out.value[i] < out.value[j]) {
        out.violating.emplace_back(i, j);
        out.h_star = std::min(out.h_star, out.levels.level_of[j] + 1);
      }
    }
  }
  out.t_star = out.h_star - 1;

  out.k.assign(t, 0);
  for (std::size_t h = 1; h <= out.t_star; ++h) {
    std::size_t cap = m;
    const Value bh = out.levels.values[h - 1];
    for (std::size_t g = out.h_star; g <= t; ++g)
      for (Agent i : out.levels.levels[g - 1])
        cap = std::min(cap, static_cast<std::size_t>((inst.initial(i) - bh) / out.value[i]));
    out.k[h - 1] = cap;
  }
  return out;
}

// True iff no agent in levels b+1..t* (holding nothing) envies an L_b agent
// holding c resources: c * v_i <= b_i - b_{L_b} for each such i.
inline bool check_ef_init_tail(const Instance& inst, const LevelAnalysis& analysis, std::size_t level,
                               std::size_t c) {
  if (level == 0 || level > analysis.t_star)
    throw InputError("level out of range");
  const Value base = analysis.levels.values[level - 1];
  for (std::size_t g = level + 1; g <= analysis.t_star; ++g)
    for (Agent i : analysis.levels.levels[g - 1])
      if (compare_products(static_cast<Value>(c), analysis.value[i], 1, inst.initial(i) - base) > 0)
        return false;
  return true;
}

struct IdenticalOptions {
  bool want_witness = true;
  bool keep_table = false; // retain every level of D, otherwise only the previous one
};

// D as booleans, d[b-1][a][c].
using TableD = std::vector<std::vector<std::vector<char>>>;

struct IdenticalDecision {
  bool exists = false;
  std::optional<Allocation> allocation;
  LevelAnalysis analysis;
  std::size_t accepted_level = 0; // 1-based, 0 if rejected
  std::size_t accepted_count = 0;
  std::size_t entries = 0;        // table entries evaluated
  std::optional<TableD> table;
};

inline IdenticalDecision decide_ef_init_identical(const Instance& inst, const IdenticalOptions& options = {}) {
  IdenticalDecision out;
  out.analysis = analyze_levels(inst);
  const auto& an = out.analysis;
  const auto m = inst.resources();
  const auto ts = an.t_star;
  if (options.keep_table)
    out.table.emplace();

  using Layer = std::vector<std::vector<char>>; // [a][c]
  using Preds = std::vector<std::vector<std::size_t>>;
  Layer prev;
  std::vector<Preds> preds; // per level, only with want_witness

  for (std::size_t b = 1; b <= ts; ++b) {
    const auto size = an.levels.levels[b - 1].size();
    const auto cap = std::min(an.k[b - 1], m);
    Layer cur(m + 1, std::vector<char>(m + 1, 0));
    Preds pred;
    if (options.want_witness)
      pred.assign(m + 1, std::vector<std::size_t>(m + 1, 0));

    // Transition bounds relative to c, from the extreme agents of L_{b-1}, L_b.
    Value lo_shift = 0, hi_shift = 0;
    if (b > 1) {
      const Value gap = an.levels.values[b - 1] - an.levels.values[b - 2];
      Value v_min = -1, v_max = 0;
      for (Agent i : an.levels.levels[b - 2])
        v_min = v_min < 0 ? an.value[i] : std::min(v_min, an.value[i]);
      for (Agent j : an.levels.levels[b - 1])
        v_max = std::max(v_max, an.value[j]);
      lo_shift = ceil_div(gap, v_min);  // i in L_{b-1} must not envy j
      hi_shift = floor_div(gap, v_max); // j must not envy i
    }

    for (std::size_t c = 1; c <= cap; ++c) {
      for (std::size_t a = size * c; a <= m; ++a) {
        ++out.entries;
        if (b == 1) {
          cur[a][c] = a == size * c;
          continue;
        }
        const auto a_prev = a - size * c;
        const Value from = std::max<Value>(1, static_cast<Value>(c) + lo_shift);
        const Value to = std::min<Value>(static_cast<Value>(std::min(an.k[b - 2], m)), static_cast<Value>(c) + hi_shift);
        for (Value cp = from; cp <= to; ++cp) {
          if (prev[a_prev][static_cast<std::size_t>(cp)]) {
            cur[a][c] = 1;
            if (options.want_witness)
              pred[a][c] = static_cast<std::size_t>(cp);
            break;
          }
        }
      }
    }

    if (options.want_witness)
      preds.push_back(std::move(pred));
    if (options.keep_table)
      out.table->push_back(cur);

    if (!out.exists) {
      for (std::size_t c = 1; c <= cap; ++c) {
        if (cur[m][c] && check_ef_init_tail(inst, an, b, c)) {
          out.exists = true;
          out.accepted_level = b;
          out.accepted_count = c;
          break;
        }
      }
      // Later levels cannot change the verdict; finish only if D is wanted.
      if (out.exists && !options.keep_table)
        break;
    }
    prev = std::move(cur);
  }

  if (out.exists && options.want_witness) {
    std::vector<std::size_t> counts(out.accepted_level, 0);
    std::size_t a = m, c = out.accepted_count;
    for (std::size_t b = out.accepted_level; b >= 1; --b) {
      counts[b - 1] = c;
      const auto next_c = preds[b - 1][a][c];
      a -= an.levels.levels[b - 1].size() * c;
      c = next_c;
    }
    Allocation alloc(inst.agents());
    Resource r = 0;
    for (std::size_t b = 1; b <= out.accepted_level; ++b) {
      auto agents = an.levels.levels[b - 1];
      std::sort(agents.begin(), agents.end());
      for (Agent i : agents)
        for (std::size_t k = 0; k < counts[b - 1]; ++k)
          alloc.give(i, r++);
    }
    out.allocation = std::move(alloc);
  }
  return out;
}

} // namespace fairinit
