#pragma once

// JSON forms of the library types. Writers use insertion-ordered objects and
// sorted index lists, so equal values always serialise to identical bytes.
// Readers reject anything malformed with InputError.

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ef_identical.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "fairness.hpp"
#include "model.hpp"
#include "reduction.hpp"
#include "round_robin.hpp"

namespace fairinit {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object())
    throw InputError(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end())
    throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

inline Value as_integer(const Json& j, const char* what) {
  if (!j.is_number_integer())
    throw InputError(std::string(what) + " must be an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    throw InputError(std::string(what) + " is out of range");
  return j.get<Value>();
}

inline std::size_t as_index(const Json& j, const char* what) {
  const Value v = as_integer(j, what);
  if (v < 0)
    throw InputError(std::string(what) + " must be non-negative");
  return static_cast<std::size_t>(v);
}

inline std::vector<std::size_t> as_index_list(const Json& j, const char* what) {
  if (!j.is_array())
    throw InputError(std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  for (const auto& x : j)
    out.push_back(as_index(x, what));
  return out;
}

} // namespace detail

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

// ---------------------------------------------------------------------------
// Instance / allocation

inline Json to_json(const Instance& inst) {
  Json agents = Json::array();
  for (Agent i = 0; i < inst.agents(); ++i) {
    const auto row = inst.row(i);
    agents.push_back({{"id", i}, {"b", inst.initial(i)}, {"u", std::vector<Value>(row.begin(), row.end())}});
  }
  return {{"m", inst.resources()}, {"agents", std::move(agents)}};
}

inline Instance instance_from_json(const Json& j) {
  const auto m = detail::as_index(detail::field(j, "m"), "m");
  const auto& list = detail::field(j, "agents");
  if (!list.is_array())
    throw InputError("'agents' must be an array");
  struct Row {
    std::size_t id;
    Value b;
    std::vector<Value> u;
  };
  std::vector<Row> rows;
  for (const auto& a : list) {
    Row r{detail::as_index(detail::field(a, "id"), "id"), detail::as_integer(detail::field(a, "b"), "b"), {}};
    const auto& u = detail::field(a, "u");
    if (!u.is_array())
      throw InputError("'u' must be an array");
    for (const auto& x : u)
      r.u.push_back(detail::as_integer(x, "utility"));
    rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) { return x.id < y.id; });
  std::vector<Value> initial;
  std::vector<std::vector<Value>> u;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].id != k)
      throw InputError("agent ids must be 0..n-1 without gaps or repeats");
    initial.push_back(rows[k].b);
    u.push_back(std::move(rows[k].u));
  }
  return Instance(m, std::move(initial), u);
}

inline Json to_json(const Allocation& alloc) {
  Json bundles = Json::array();
  for (const auto& b : alloc.bundles())
    bundles.push_back(b);
  return {{"bundles", std::move(bundles)}};
}

inline Allocation allocation_from_json(const Json& j) {
  const auto& list = detail::field(j, "bundles");
  if (!list.is_array())
    throw InputError("'bundles' must be an array");
  std::vector<Bundle> bundles;
  for (const auto& b : list)
    bundles.push_back(detail::as_index_list(b, "resource index"));
  return Allocation(std::move(bundles));
}

// ---------------------------------------------------------------------------
// Graphs and colorings

inline Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges())
    edges.push_back({a, b});
  return {{"vertices", g.vertices()}, {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const Json& j) {
  const auto nv = detail::as_index(detail::field(j, "vertices"), "vertices");
  const auto& list = detail::field(j, "edges");
  if (!list.is_array())
    throw InputError("'edges' must be an array");
  std::vector<Edge> edges;
  for (const auto& e : list) {
    const auto ends = detail::as_index_list(e, "edge endpoint");
    if (ends.size() != 2)
      throw InputError("an edge needs exactly two endpoints");
    edges.emplace_back(ends[0], ends[1]);
  }
  return Graph(nv, std::move(edges));
}

inline Json to_json(const Coloring& c) { return {{"colors", c.colors}, {"color", c.color}}; }

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const ValidationResult& v) {
  static constexpr const char* kinds[] = {"too_few_agents", "no_resources", "agent_values_nothing",
                                          "resource_valued_by_nobody"};
  Json issues = Json::array();
  for (const auto& issue : v.issues)
    issues.push_back(
        {{"kind", kinds[static_cast<int>(issue.kind)]}, {"index", issue.index}, {"message", issue.message}});
  return {{"ok", v.ok()}, {"issues", std::move(issues)}};
}

inline Json to_json(const PairVerdict& v) {
  Json out = Json::object();
  out["ok"] = v.ok;
  out["removed"] = v.removed ? Json(*v.removed) : Json(nullptr);
  out["xstar"] = v.xstar ? Json(*v.xstar) : Json(nullptr);
  out["margin"] = v.margin;
  return out;
}

inline Json to_json(const EnvyReport& r) {
  Json out = Json::object();
  out["notion"] = std::string(notion_name(r.notion.tag));
  if (r.notion.alpha)
    out["alpha"] = r.notion.alpha->str();
  out["satisfied"] = r.satisfied;
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    Json entry = {{"i", p.i}, {"j", p.j}};
    entry.update(to_json(p.verdict));
    pairs.push_back(std::move(entry));
  }
  out["pairs"] = std::move(pairs);
  return out;
}

inline Json to_json(const MmsReport& r) {
  Json agents = Json::array();
  for (const auto& a : r.agents)
    agents.push_back({{"agent", a.agent}, {"share", a.share}, {"outcome", a.outcome}, {"ok", a.ok}});
  return {{"alpha", r.alpha.str()}, {"satisfied", r.satisfied}, {"agents", std::move(agents)}};
}

inline Json to_json(const MmsCountCertificate& c) {
  return {{"alpha", c.alpha.str()},
          {"shares", c.shares},
          {"required", c.required},
          {"total_required", c.total_required},
          {"impossible", c.impossible}};
}

inline Json to_json(const LevelAnalysis& a) {
  Json violating = Json::array();
  for (const auto& [i, j] : a.violating)
    violating.push_back({i, j});
  return {{"levels", a.levels.levels}, {"level_values", a.levels.values}, {"h_star", a.h_star},
          {"t_star", a.t_star},        {"k", a.k},                       {"violating", std::move(violating)}};
}

// ---------------------------------------------------------------------------
// Round-robin traces

inline Json to_json(const PickTrace& t) {
  Json events = Json::array();
  for (const auto& ev : t.events) {
    if (const auto* p = std::get_if<PickEvent>(&ev))
      events.push_back({{"type", "pick"}, {"agent", p->agent}, {"resource", p->resource}, {"round", p->round}});
    else {
      const auto& a = std::get<ActivateEvent>(ev);
      events.push_back({{"type", "activate"}, {"level", a.level}, {"insert_pos", a.insert_pos}});
    }
  }
  return {{"events", std::move(events)}, {"final_order", t.final_order}};
}

inline PickTrace trace_from_json(const Json& j) {
  PickTrace out;
  const auto& events = detail::field(j, "events");
  if (!events.is_array())
    throw InputError("'events' must be an array");
  for (const auto& ev : events) {
    const auto& type = detail::field(ev, "type");
    if (type == "pick")
      out.events.push_back(PickEvent{detail::as_index(detail::field(ev, "agent"), "agent"),
                                     detail::as_index(detail::field(ev, "resource"), "resource"),
                                     detail::as_index(detail::field(ev, "round"), "round")});
    else if (type == "activate")
      out.events.push_back(ActivateEvent{detail::as_index(detail::field(ev, "level"), "level"),
                                         detail::as_index(detail::field(ev, "insert_pos"), "insert_pos")});
    else
      throw InputError("unknown trace event type");
  }
  out.final_order = detail::as_index_list(detail::field(j, "final_order"), "final_order");
  return out;
}

} // namespace fairinit
