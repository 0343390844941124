#pragma once

#include <cstdint>
#include <vector>

#include "dim/coloring.hpp"
#include "dim/graph.hpp"

namespace dim {

/// A vertex still open in a propagated state: uncoloured, or black without a mate.
inline bool unsettled(const ColoringState& st, Vertex v) {
  return st.color(v) == Color::Unknown || (st.color(v) == Color::Black && st.mate(v) == kNoVertex);
}

/// Connected components of the subgraph induced by unsettled vertices,
/// restricted to `scope` when given (every listed vertex is considered, and
/// growth stays inside the scope).
inline std::vector<std::vector<Vertex>> unsettled_components(const ColoringState& st,
                                                             std::span<const Vertex> scope = {}) {
  const Graph& g = st.graph();
  std::vector<char> in_scope;
  if (!scope.empty()) {
    in_scope.assign(g.n(), 0);
    for (Vertex v : scope) in_scope[v] = 1;
  }
  auto inside = [&](Vertex v) { return (scope.empty() || in_scope[v]) && unsettled(st, v); };
  std::vector<char> seen(g.n(), 0);
  std::vector<std::vector<Vertex>> comps;
  std::vector<Vertex> stack;
  auto visit = [&](Vertex s) {
    if (seen[s] || !inside(s)) return;
    std::vector<Vertex> comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v))
        if (!seen[w] && inside(w)) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  };
  if (scope.empty()) {
    for (Vertex v = 0; v < g.n(); ++v) visit(v);
  } else {
    for (Vertex v : scope) visit(v);
  }
  return comps;
}

namespace detail {

inline bool subsolve_component(ColoringState& st, std::vector<Vertex> comp, std::uint64_t& nodes);

// Solves every unsettled component inside `scope` in turn. Components of a
// propagated state do not constrain each other, so no backtracking across
// them is needed.
inline bool subsolve_all(ColoringState& st, std::span<const Vertex> scope, std::uint64_t& nodes) {
  for (auto& comp : unsettled_components(st, scope))
    if (!subsolve_component(st, std::move(comp), nodes)) return false;
  return true;
}

inline bool subsolve_component(ColoringState& st, std::vector<Vertex> comp, std::uint64_t& nodes) {
  ++nodes;
  // Prefer a black vertex still looking for its mate: its candidates are
  // exactly the ways to complete it.
  Vertex pivot = kNoVertex;
  std::size_t best = 0;
  for (Vertex v : comp) {
    if (st.color(v) != Color::Black || st.mate(v) != kNoVertex) continue;
    std::size_t c = st.mate_candidates(v);
    if (pivot == kNoVertex || c < best) {
      pivot = v;
      best = c;
    }
  }
  const Graph& g = st.graph();
  if (pivot != kNoVertex) {
    auto nb = g.neighbors(pivot);
    auto ids = g.incident_edges(pivot);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      Vertex w = nb[i];
      if (st.color(w) == Color::White || st.is_excluded(ids[i]) || st.mate(w) != kNoVertex) continue;
      ColoringState next = st;
      if (next.assign(w, Color::Black) && next.propagate() && subsolve_all(next, comp, nodes)) {
        st = std::move(next);
        return true;
      }
    }
    return false;
  }
  // All open vertices are uncoloured: branch on the one of largest degree.
  Vertex v = comp.front();
  for (Vertex w : comp)
    if (g.degree(w) > g.degree(v)) v = w;
  for (Color c : {Color::Black, Color::White}) {
    ColoringState next = st;
    if (next.assign(v, c) && next.propagate() && subsolve_all(next, comp, nodes)) {
      st = std::move(next);
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Exact completion search on a propagated state: repeatedly picks an open
/// vertex, branches on how it is resolved, and propagates. Only vertices in
/// `scope` are touched (all vertices when empty). Exponential in the worst
/// case; correct on every graph. On success `st` holds the completion.
inline bool constrained_subsolver(ColoringState& st, std::span<const Vertex> scope = {},
                                  std::uint64_t* node_counter = nullptr) {
  std::uint64_t nodes = 0;
  if (!st.propagate()) return false;
  bool ok = detail::subsolve_all(st, scope, nodes);
  if (node_counter) *node_counter += nodes;
  return ok;
}

}  // namespace dim
