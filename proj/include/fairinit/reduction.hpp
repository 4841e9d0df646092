#pragma once

// Graph coloring reductions: padding a graph so that plain colorability
// becomes equitable colorability, and the gadget turning equitable
// ell-coloring into EF1-init existence. Includes small exhaustive solvers used
// to certify the equivalence on tiny graphs.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "enumerate.hpp"
#include "errors.hpp"
#include "fairness.hpp"
#include "model.hpp"
#include "oracle.hpp"

namespace fairinit {

using Edge = std::pair<std::size_t, std::size_t>;

class Graph {
public:
  Graph() = default;

  // Edges are stored as (low, high) in the given order.
  Graph(std::size_t vertices, std::vector<Edge> edges) : vertices_(vertices), edges_(std::move(edges)) {
    std::set<Edge> seen;
    for (auto& [a, b] : edges_) {
      if (a >= vertices_ || b >= vertices_)
        throw InputError("edge endpoint out of range");
      if (a == b)
        throw InputError("self-loop on vertex " + std::to_string(a));
      if (a > b)
        std::swap(a, b);
      if (!seen.emplace(a, b).second)
        throw InputError("duplicate edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
    }
  }

  std::size_t vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  friend bool operator==(const Graph&, const Graph&) = default;

private:
  std::size_t vertices_ = 0;
  std::vector<Edge> edges_;
};

struct Coloring {
  std::vector<std::size_t> color; // per vertex, in [0, colors)
  std::size_t colors = 0;
  friend bool operator==(const Coloring&, const Coloring&) = default;
};

inline bool is_proper(const Graph& g, const Coloring& c) {
  if (c.color.size() != g.vertices())
    return false;
  for (auto x : c.color)
    if (x >= c.colors)
      return false;
  for (const auto& [a, b] : g.edges())
    if (c.color[a] == c.color[b])
      return false;
  return true;
}

inline bool is_equitable(const Graph& g, const Coloring& c) {
  if (!is_proper(g, c))
    return false;
  std::vector<std::size_t> size(c.colors, 0);
  for (auto x : c.color)
    ++size[x];
  if (size.empty())
    return true;
  const auto [lo, hi] = std::minmax_element(size.begin(), size.end());
  return *hi - *lo <= 1;
}

// G plus (ell - 1) * |V| isolated vertices.
inline Graph pad_to_equitable(const Graph& g, std::size_t ell) {
  if (ell < 1)
    throw InputError("need at least one color");
  return Graph(g.vertices() + (ell - 1) * g.vertices(), g.edges());
}

// Color agents 0..ell-1 (b = 0, value 1 per vertex), then one agent per edge
// (b = |V|+1, value |V|+2 on each endpoint). Resource v is vertex v.
inline Instance build_ef1_instance(const Graph& g, std::size_t ell) {
  if (ell < 1)
    throw InputError("need at least one color");
  const auto nv = g.vertices();
  const auto big = static_cast<Value>(nv);
  std::vector<Value> initial;
  std::vector<std::vector<Value>> rows;
  for (std::size_t c = 0; c < ell; ++c) {
    initial.push_back(0);
    rows.emplace_back(nv, 1);
  }
  for (const auto& [a, b] : g.edges()) {
    initial.push_back(big + 1);
    std::vector<Value> row(nv, 0);
    row[a] = row[b] = big + 2;
    rows.push_back(std::move(row));
  }
  return Instance(nv, std::move(initial), rows);
}

inline Allocation coloring_to_allocation(const Graph& g, const Coloring& c) {
  if (c.color.size() != g.vertices())
    throw InputError("coloring has the wrong number of vertices");
  Allocation out(c.colors + g.edges().size());
  for (std::size_t v = 0; v < c.color.size(); ++v) {
    if (c.color[v] >= c.colors)
      throw InputError("color out of range");
    out.give(c.color[v], v);
  }
  return out;
}

// Inverse of coloring_to_allocation. Throws if an edge agent holds a vertex
// or some vertex is unallocated.
inline Coloring allocation_to_coloring(const Graph& g, std::size_t ell, const Allocation& alloc) {
  if (alloc.agents() != ell + g.edges().size())
    throw InputError("allocation does not match the gadget");
  for (std::size_t e = ell; e < alloc.agents(); ++e)
    if (!alloc.bundle(e).empty())
      throw InputError("edge agent " + std::to_string(e) + " holds a resource");
  Coloring out{std::vector<std::size_t>(g.vertices(), ell), ell};
  for (std::size_t c = 0; c < ell; ++c) {
    for (Resource v : alloc.bundle(c)) {
      if (v >= g.vertices())
        throw InputError("resource index out of range");
      out.color[v] = c;
    }
  }
  for (std::size_t v = 0; v < g.vertices(); ++v)
    if (out.color[v] == ell)
      throw InputError("vertex " + std::to_string(v) + " is unallocated");
  return out;
}

namespace detail {
template <class Accept>
std::optional<Coloring> first_coloring(const Graph& g, std::size_t ell, const Guard& guard, Accept&& accept) {
  guarded_power(ell, g.vertices(), guard, "coloring enumeration");
  if (ell == 0)
    return g.vertices() == 0 ? std::optional<Coloring>(Coloring{{}, 0}) : std::nullopt;
  Odometer odo(ell, g.vertices());
  do {
    Coloring c{odo.digits(), ell};
    if (accept(c))
      return c;
  } while (odo.next());
  return std::nullopt;
}
} // namespace detail

inline std::optional<Coloring> find_proper_coloring(const Graph& g, std::size_t ell, const Guard& guard = {}) {
  return detail::first_coloring(g, ell, guard, [&](const Coloring& c) { return is_proper(g, c); });
}

inline std::optional<Coloring> find_equitable_coloring(const Graph& g, std::size_t ell, const Guard& guard = {}) {
  return detail::first_coloring(g, ell, guard, [&](const Coloring& c) { return is_equitable(g, c); });
}

struct ReductionCertificate {
  bool coloring_exists = false;
  bool allocation_exists = false;
  bool forward_ok = true;  // a found coloring maps to an EF1-init allocation
  bool backward_ok = true; // a found allocation maps back to an equitable coloring
  bool certified = false;
};

// Decides both sides exhaustively and checks the two translations.
inline ReductionCertificate certify_reduction(const Graph& g, std::size_t ell, const Guard& guard = {}) {
  ReductionCertificate out;
  const auto inst = build_ef1_instance(g, ell);
  const auto coloring = find_equitable_coloring(g, ell, guard);
  const auto alloc = exists_complete(inst, NotionTag::Ef1Init, guard);
  out.coloring_exists = coloring.has_value();
  out.allocation_exists = alloc.has_value();
  if (coloring)
    out.forward_ok = satisfies(inst, coloring_to_allocation(g, *coloring), NotionTag::Ef1Init);
  if (alloc) {
    try {
      out.backward_ok = is_equitable(g, allocation_to_coloring(g, ell, *alloc));
    } catch (const InputError&) {
      out.backward_ok = false;
    }
  }
  out.certified = out.coloring_exists == out.allocation_exists && out.forward_ok && out.backward_ok;
  return out;
}

// One representative per isomorphism class of simple graphs on v vertices
// (v <= 6), found by canonicalising every edge subset.
inline std::vector<Graph> nonisomorphic_graphs(std::size_t v) {
  if (v > 6)
    throw GuardExceeded("isomorphism classes are only enumerated up to 6 vertices");
  std::vector<Edge> slots;
  for (std::size_t a = 0; a < v; ++a)
    for (std::size_t b = a + 1; b < v; ++b)
      slots.emplace_back(a, b);
  std::vector<std::size_t> perm(v);
  std::set<std::uint32_t> canon;
  std::vector<Graph> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << slots.size()); ++mask) {
    std::uint32_t best = UINT32_MAX;
    for (std::size_t k = 0; k < v; ++k)
      perm[k] = k;
    do {
      std::uint32_t image = 0;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (!(mask >> s & 1))
          continue;
        auto a = perm[slots[s].first], b = perm[slots[s].second];
        if (a > b)
          std::swap(a, b);
        const auto idx = std::find(slots.begin(), slots.end(), Edge{a, b}) - slots.begin();
        image |= std::uint32_t{1} << idx;
      }
      best = std::min(best, image);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (canon.insert(best).second) {
      std::vector<Edge> edges;
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (best >> s & 1)
          edges.push_back(slots[s]);
      out.emplace_back(v, std::move(edges));
    }
  }
  return out;
}

} // namespace fairinit
