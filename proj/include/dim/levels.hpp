#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dim/coloring.hpp"
#include "dim/graph.hpp"

namespace dim {

/// Distance levels around a candidate matching edge xy, with the block
/// structure of levels 2 and 3.
///
/// `levels` is fixed when the decomposition is built; the derived sets
/// (S2, M2, T, S3, Ext, in/out-vertices) only list vertices that are still
/// active in the state and are rebuilt by `refresh`.
struct LevelDecomposition {
  EdgeRef xy;
  std::vector<std::vector<Vertex>> levels;
  std::vector<int> level_of;  // -1 outside the levels
  std::size_t n2_size = 0;    // |N2| when the levels were built

  std::vector<EdgeRef> m2;
  std::vector<Vertex> s2;               // u_1..u_k (unresolved)
  std::vector<std::vector<Vertex>> t;   // t[i] = T_i
  std::vector<Vertex> t_one;
  std::vector<Vertex> s3;
  std::vector<std::vector<Vertex>> ext; // ext[i] = N(T_i) ∩ N4
  std::vector<std::vector<Vertex>> in_vertices;
  std::vector<std::vector<Vertex>> out_vertices;
  std::vector<int> block_of;            // block index of u_i and of T_i members, else -1

  int level(Vertex v) const { return level_of[v]; }

  std::vector<Vertex> level_set(int i) const {
    return i < static_cast<int>(levels.size()) ? levels[i] : std::vector<Vertex>{};
  }

  /// A_xy = {x,y} ∪ N1 ∪ N2 ∪ N3.
  std::vector<Vertex> a_xy() const {
    std::vector<Vertex> out;
    for (int i = 0; i < std::min<int>(4, static_cast<int>(levels.size())); ++i)
      out.insert(out.end(), levels[i].begin(), levels[i].end());
    std::sort(out.begin(), out.end());
    return out;
  }

  /// B_xy: every levelled vertex at distance at least 4.
  std::vector<Vertex> b_xy() const {
    std::vector<Vertex> out;
    for (std::size_t i = 4; i < levels.size(); ++i) out.insert(out.end(), levels[i].begin(), levels[i].end());
    std::sort(out.begin(), out.end());
    return out;
  }

  int max_level() const { return static_cast<int>(levels.size()) - 1; }
};

namespace detail {

inline std::vector<char> active_mask_of(const ColoringState& st) {
  std::vector<char> m(st.graph().n());
  for (Vertex v = 0; v < st.graph().n(); ++v) m[v] = st.removed(v) ? 0 : 1;
  return m;
}

}  // namespace detail

/// Rebuilds the derived sets from the current state.
inline void refresh(const ColoringState& st, LevelDecomposition& d) {
  const Graph& g = st.graph();
  auto active = [&](Vertex v) { return !st.removed(v); };
  auto at = [&](Vertex v, int lvl) { return d.level_of[v] == lvl && active(v); };
  d.m2.clear();
  d.s2.clear();
  d.t.clear();
  d.t_one.clear();
  d.s3.clear();
  d.ext.clear();
  d.in_vertices.clear();
  d.out_vertices.clear();
  d.block_of.assign(g.n(), -1);

  for (Vertex u : d.level_set(2)) {
    if (!active(u)) continue;
    bool isolated = true;
    for (Vertex w : g.neighbors(u)) {
      if (!at(w, 2)) continue;
      isolated = false;
      if (u < w) d.m2.emplace_back(u, w);
    }
    if (isolated) {
      d.block_of[u] = static_cast<int>(d.s2.size());
      d.s2.push_back(u);
      d.t.emplace_back();
    }
  }
  for (Vertex t : d.level_set(3)) {
    if (!active(t)) continue;
    Vertex only = kNoVertex;
    int count = 0;
    for (Vertex w : g.neighbors(t))
      if (at(w, 2)) {
        ++count;
        only = w;
      }
    if (count != 1) {
      d.s3.push_back(t);
      continue;
    }
    d.t_one.push_back(t);
    int b = d.block_of[only];
    if (b >= 0) {
      d.block_of[t] = b;
      d.t[b].push_back(t);
    }
  }
  const std::size_t k = d.s2.size();
  d.ext.assign(k, {});
  d.in_vertices.assign(k, {});
  d.out_vertices.assign(k, {});
  for (std::size_t i = 0; i < k; ++i) {
    for (Vertex t : d.t[i]) {
      bool out = false;
      for (Vertex w : g.neighbors(t)) {
        if (!active(w)) continue;
        if (d.level_of[w] == 4) {
          out = true;
          d.ext[i].push_back(w);
        } else if (d.level_of[w] == 3 && d.block_of[w] != static_cast<int>(i)) {
          out = true;
        }
      }
      (out ? d.out_vertices[i] : d.in_vertices[i]).push_back(t);
    }
    std::sort(d.ext[i].begin(), d.ext[i].end());
    d.ext[i].erase(std::unique(d.ext[i].begin(), d.ext[i].end()), d.ext[i].end());
  }
}

/// Builds the levels of xy over the active vertices, colours x, y black, N1
/// white and N2 black, excludes every edge inside N3 and between N3 and N4,
/// and propagates. The state carries any conflict.
inline LevelDecomposition decompose(ColoringState& st, EdgeRef xy) {
  const Graph& g = st.graph();
  LevelDecomposition d;
  d.xy = xy;
  auto mask = detail::active_mask_of(st);
  mask[xy.u] = mask[xy.v] = 1;
  d.levels = distance_levels(g, xy, mask);
  d.level_of.assign(g.n(), -1);
  for (std::size_t i = 0; i < d.levels.size(); ++i)
    for (Vertex v : d.levels[i]) d.level_of[v] = static_cast<int>(i);
  d.n2_size = d.level_set(2).size();

  st.assign(xy.u, Color::Black);
  st.assign(xy.v, Color::Black);
  for (Vertex v : d.level_set(1)) st.assign(v, Color::White);
  for (Vertex v : d.level_set(2)) st.assign(v, Color::Black);
  for (Vertex v : d.level_set(3)) {
    for (Vertex w : g.neighbors(v)) {
      int lw = d.level_of[w];
      if ((lw == 3 && v < w) || lw == 4) st.exclude(v, w);
    }
  }
  st.propagate();
  refresh(st, d);
  return d;
}

struct NormalizeOptions {
  /// Keep a single in-vertex per block (existence-preserving, not forcing).
  bool drop_surplus_in_vertices = true;
};

namespace detail {

inline bool bipartite(const Graph& g, std::span<const Vertex> vs, std::span<const char> inside) {
  std::vector<int> side(g.n(), -1);
  std::vector<Vertex> stack;
  for (Vertex s : vs) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (!inside[w]) continue;
        if (side[w] < 0) {
          side[w] = 1 - side[v];
          stack.push_back(w);
        } else if (side[w] == side[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

// Applies at most one normalisation rule. Returns 1 if a rule fired, 0 if
// none applies, -1 on failure.
inline int normalize_step(ColoringState& st, LevelDecomposition& d, ReductionLog& log,
                          const NormalizeOptions& opts) {
  const Graph& g = st.graph();
  auto fired = [&](bool ok) { return ok ? 1 : -1; };

  for (const auto& e : d.m2) return fired(edge_reduction(st, log, e, Rule::LevelM2));
  for (Vertex v : d.s3) return fired(vertex_reduction(st, log, v, Rule::LevelS3));

  const std::size_t k = d.s2.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (d.t[i].empty()) {
      st.fail("empty T_i", {d.s2[i]});
      return -1;
    }
    if (d.t[i].size() == 1) return fired(edge_reduction(st, log, EdgeRef(d.s2[i], d.t[i][0]), Rule::LevelSingleton));
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (Vertex t : d.t[i]) {
      std::vector<int> per_block;
      for (Vertex w : g.neighbors(t)) {
        int b = d.block_of[w];
        if (b < 0 || b == static_cast<int>(i) || d.level_of[w] != 3 || st.removed(w)) continue;
        per_block.push_back(b);
      }
      std::sort(per_block.begin(), per_block.end());
      if (std::adjacent_find(per_block.begin(), per_block.end()) != per_block.end())
        return fired(edge_reduction(st, log, EdgeRef(d.s2[i], t), Rule::LevelTwoNeighbors));
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (Vertex a : d.t[i]) {
      for (Vertex b : g.neighbors(a)) {
        if (b <= a || d.block_of[b] != static_cast<int>(i) || d.level_of[b] != 3 || st.removed(b)) continue;
        if (d.t[i].size() == 2) continue;
        for (Vertex c : d.t[i])
          if (c != a && c != b) return fired(vertex_reduction(st, log, c, Rule::LevelBlockEdge));
      }
    }
  }
  for (Vertex a : d.level_set(3)) {
    if (st.removed(a)) continue;
    for (Vertex b : g.neighbors(a)) {
      if (d.level_of[b] != 4 || st.removed(b)) continue;
      for (Vertex c : g.neighbors(b))
        if (c > b && d.level_of[c] == 4 && !st.removed(c) && g.has_edge(a, c))
          return fired(edge_reduction(st, log, EdgeRef(b, c), Rule::LevelTriangle));
    }
  }
  if (opts.drop_surplus_in_vertices) {
    for (std::size_t i = 0; i < k; ++i) {
      const auto& in = d.in_vertices[i];
      if (in.size() < 2) continue;
      // Keep an in-vertex on a block-internal edge if there is one, else the lowest id.
      Vertex keep = in.front();
      for (Vertex a : in)
        for (Vertex b : g.neighbors(a))
          if (keep == in.front() && d.block_of[b] == static_cast<int>(i) && d.level_of[b] == 3 && !st.removed(b))
            keep = a;
      for (Vertex a : in)
        if (a != keep) return fired(vertex_reduction(st, log, a, Rule::LevelInVertex));
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      std::vector<EdgeRef> between;
      for (Vertex a : d.t[i])
        for (Vertex b : g.neighbors(a))
          if (d.block_of[b] == static_cast<int>(j) && d.level_of[b] == 3 && !st.removed(b)) between.emplace_back(a, b);
      if (between.size() >= 3) {
        st.fail("three edges between T_i and T_j", {d.s2[i], d.s2[j]});
        return -1;
      }
      if (between.size() == 2) {
        const auto& e1 = between[0];
        const auto& e2 = between[1];
        auto keep = [&](Vertex v) { return e1.contains(v) || e2.contains(v); };
        for (std::size_t b : {i, j})
          for (Vertex v : d.t[b])
            if (!keep(v)) return fired(vertex_reduction(st, log, v, Rule::LevelTwoContacts));
      }
    }
  }
  std::vector<char> inside(g.n(), 0);
  std::vector<Vertex> n3;
  for (Vertex v : d.level_set(3))
    if (!st.removed(v)) {
      inside[v] = 1;
      n3.push_back(v);
    }
  if (!bipartite(g, n3, inside)) {
    st.fail("G[N3] is not bipartite", {});
    return -1;
  }
  return 0;
}

}  // namespace detail

/// Applies the level rules to a fixpoint: matches every edge inside N2,
/// whitens N3 vertices with several N2 neighbours, settles empty and
/// singleton blocks, forces t in T_i when it sees two vertices of one T_j,
/// whitens the rest of a block around an internal edge, matches the N4 edge
/// of every triangle hanging off N3, keeps one in-vertex per block, and
/// handles pairs of blocks joined by two or more edges. Fails when G[N3] is
/// not bipartite. Returns false iff no d.i.m. contains xy.
inline bool normalize(ColoringState& st, LevelDecomposition& d, ReductionLog& log, const NormalizeOptions& opts = {}) {
  while (true) {
    if (!st.propagate()) return false;
    sweep(st, log);
    refresh(st, d);
    int r = detail::normalize_step(st, d, log, opts);
    if (r < 0) return false;
    if (r == 0) return true;
  }
}

/// Checks on a normalised decomposition that always hold when the input has
/// no induced S_{1,1,5}: no claw in G[N3] with exactly one leaf in a block
/// avoided by the other three vertices, and no induced P5 in G[N3] through
/// five distinct blocks. Returns a description of the first violation.
inline std::optional<std::string> n3_structure_violation(const ColoringState& st, const LevelDecomposition& d) {
  const Graph& g = st.graph();
  auto in_n3 = [&](Vertex v) { return d.level_of[v] == 3 && !st.removed(v); };
  for (Vertex a : d.level_set(3)) {
    if (!in_n3(a)) continue;
    std::vector<Vertex> nb;
    for (Vertex w : g.neighbors(a))
      if (in_n3(w)) nb.push_back(w);
    for (std::size_t p = 0; p < nb.size(); ++p)
      for (std::size_t q = p + 1; q < nb.size(); ++q)
        for (std::size_t r = q + 1; r < nb.size(); ++r) {
          std::array<Vertex, 3> leaves{nb[p], nb[q], nb[r]};
          if (g.has_edge(leaves[0], leaves[1]) || g.has_edge(leaves[0], leaves[2]) || g.has_edge(leaves[1], leaves[2]))
            continue;
          for (int li = 0; li < 3; ++li) {
            int b = d.block_of[leaves[li]];
            if (b < 0) continue;
            bool alone = d.block_of[a] != b;
            for (int lj = 0; lj < 3; ++lj)
              if (lj != li && d.block_of[leaves[lj]] == b) alone = false;
            if (alone) return std::string("claw in N3 with a single leaf in its block");
          }
        }
  }
  std::vector<Vertex> path;
  std::vector<char> on(g.n(), 0);
  auto blocks_distinct = [&](Vertex w) {
    for (Vertex p : path)
      if (d.block_of[p] == d.block_of[w]) return false;
    return d.block_of[w] >= 0;
  };
  std::function<bool()> extend = [&]() {
    if (path.size() == 5) return true;
    Vertex last = path.back();
    for (Vertex w : g.neighbors(last)) {
      if (!in_n3(w) || on[w] || !blocks_distinct(w)) continue;
      bool induced = true;
      for (std::size_t i = 0; i + 1 < path.size() && induced; ++i)
        if (g.has_edge(path[i], w)) induced = false;
      if (!induced) continue;
      path.push_back(w);
      on[w] = 1;
      if (extend()) return true;
      on[w] = 0;
      path.pop_back();
    }
    return false;
  };
  for (Vertex s : d.level_set(3)) {
    if (!in_n3(s) || d.block_of[s] < 0) continue;
    path.assign(1, s);
    on[s] = 1;
    if (extend()) return std::string("induced P5 in N3 across five blocks");
    on[s] = 0;
  }
  return std::nullopt;
}

}  // namespace dim
