#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dim/graph.hpp"
#include "dim/patterns.hpp"

namespace dim {

enum class Color : std::uint8_t { Unknown, Black, White };

inline std::string_view to_string(Color c) {
  switch (c) {
    case Color::Unknown: return "unknown";
    case Color::Black: return "black";
    case Color::White: return "white";
  }
  return "?";
}

struct Conflict {
  std::string reason;
  std::vector<Vertex> vertices;
};

/// Partial black/white colouring of a fixed graph together with the matched
/// pairs found so far, the excluded edges and a removal mask.
///
/// Black means "covered by the matching", white means "outside it". A
/// complete colouring without conflict corresponds to exactly one dominating
/// induced matching, namely the set of mate pairs.
///
/// `propagate()` closes the state under these rules:
///   - every neighbour of a white vertex is black;
///   - two adjacent black vertices are mates (conflict if the edge is excluded
///     or either endpoint is already mated elsewhere);
///   - a mated vertex whitens all its other neighbours;
///   - an unmated black vertex with a single mate candidate forces it black,
///     and one with none is a conflict;
///   - an excluded edge with one black endpoint whitens the other;
///   - an unknown vertex with no possible mate, or with two black
///     neighbours, is white.
///
/// The removal mask does not take part in propagation. It only marks vertices
/// that reductions have settled, so callers can restrict structural work to
/// the remaining ones.
class ColoringState {
 public:
  ColoringState() = default;
  explicit ColoringState(const Graph& g)
      : g_(&g),
        color_(g.n(), Color::Unknown),
        mate_(g.n(), kNoVertex),
        excluded_(g.m(), 0),
        removed_(g.n(), 0),
        queued_(g.n(), 0) {}

  const Graph& graph() const { return *g_; }

  Color color(Vertex v) const { return color_[v]; }
  Vertex mate(Vertex v) const { return mate_[v]; }
  bool is_excluded(EdgeId id) const { return excluded_[id] != 0; }
  bool is_excluded(Vertex a, Vertex b) const {
    EdgeId id = g_->edge_id(a, b);
    return id != kNoEdge && excluded_[id] != 0;
  }
  bool removed(Vertex v) const { return removed_[v] != 0; }
  std::span<const char> removed_mask() const { return removed_; }

  bool ok() const { return !conflict_.has_value(); }
  const std::optional<Conflict>& conflict() const { return conflict_; }

  /// Records a colour. Re-assigning a different colour is a conflict.
  bool assign(Vertex v, Color c) {
    if (!ok()) return false;
    if (color_[v] == c) return true;
    if (color_[v] != Color::Unknown) {
      fail("vertex already coloured " + std::string(to_string(color_[v])), {v});
      return false;
    }
    color_[v] = c;
    touch(v);
    return true;
  }

  /// Marks `uv` as an edge that may not be a matching edge.
  bool exclude(Vertex a, Vertex b) {
    EdgeId id = g_->edge_id(a, b);
    if (id == kNoEdge) {
      fail("excluding a non-edge", {a, b});
      return false;
    }
    return exclude(id);
  }

  bool exclude(EdgeId id) {
    if (excluded_[id]) return ok();
    const auto& e = g_->edge(id);
    if (mate_[e.u] == e.v) {
      fail("excluding a matched edge", {e.u, e.v});
      return false;
    }
    excluded_[id] = 1;
    push(e.u);
    push(e.v);
    return ok();
  }

  void remove(Vertex v) { removed_[v] = 1; }

  /// Runs the forcing rules to a fixpoint. Returns false on conflict.
  bool propagate() {
    while (ok() && head_ < queue_.size()) {
      Vertex v = queue_[head_++];
      queued_[v] = 0;
      process(v);
    }
    for (std::size_t i = head_; i < queue_.size(); ++i) queued_[queue_[i]] = 0;
    queue_.clear();
    head_ = 0;
    return ok();
  }

  /// Requeues every vertex; used after bulk external changes.
  void touch_all() {
    for (Vertex v = 0; v < g_->n(); ++v) push(v);
  }

  bool complete() const {
    for (Color c : color_)
      if (c == Color::Unknown) return false;
    return true;
  }

  /// Number of possible mates of `v`: non-white neighbours over non-excluded
  /// edges that are not mated to somebody else.
  std::size_t mate_candidates(Vertex v, Vertex* last = nullptr) const {
    std::size_t count = 0;
    auto nb = g_->neighbors(v);
    auto ids = g_->incident_edges(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      Vertex w = nb[i];
      if (color_[w] == Color::White || excluded_[ids[i]]) continue;
      if (mate_[w] != kNoVertex && mate_[w] != v) continue;
      ++count;
      if (last) *last = w;
    }
    return count;
  }

  /// Mate pairs as a certificate.
  DimCertificate matching() const {
    std::vector<EdgeRef> out;
    for (Vertex v = 0; v < g_->n(); ++v)
      if (mate_[v] != kNoVertex && v < mate_[v]) out.emplace_back(v, mate_[v]);
    return DimCertificate(std::move(out));
  }

  void fail(std::string reason, std::vector<Vertex> where) {
    if (!conflict_) conflict_ = Conflict{std::move(reason), std::move(where)};
  }

 private:
  void push(Vertex v) {
    if (!queued_[v]) {
      queued_[v] = 1;
      queue_.push_back(v);
    }
  }

  void touch(Vertex v) {
    push(v);
    for (Vertex w : g_->neighbors(v)) push(w);
  }

  void set_mate(Vertex a, Vertex b) {
    mate_[a] = b;
    mate_[b] = a;
    touch(a);
    touch(b);
  }

  void process(Vertex v) {
    auto nb = g_->neighbors(v);
    auto ids = g_->incident_edges(v);
    switch (color_[v]) {
      case Color::White:
        for (Vertex w : nb) {
          if (color_[w] == Color::White) {
            fail("adjacent white vertices", {v, w});
            return;
          }
          if (color_[w] == Color::Unknown) assign(w, Color::Black);
        }
        return;

      case Color::Black: {
        Vertex black_nb = kNoVertex;
        for (std::size_t i = 0; i < nb.size(); ++i) {
          Vertex w = nb[i];
          if (color_[w] != Color::Black) continue;
          if (excluded_[ids[i]]) {
            fail("black endpoints on an excluded edge", {v, w});
            return;
          }
          if (black_nb != kNoVertex) {
            fail("black vertex with two black neighbours", {v, black_nb, w});
            return;
          }
          black_nb = w;
        }
        if (black_nb != kNoVertex && mate_[v] == kNoVertex) {
          if (mate_[black_nb] != kNoVertex && mate_[black_nb] != v) {
            fail("black vertex adjacent to a vertex mated elsewhere", {v, black_nb});
            return;
          }
          set_mate(v, black_nb);
        }
        if (mate_[v] != kNoVertex) {
          if (black_nb != mate_[v]) {
            fail("mate is not black", {v, mate_[v]});
            return;
          }
          for (Vertex w : nb)
            if (w != mate_[v] && color_[w] == Color::Unknown) assign(w, Color::White);
          return;
        }
        for (std::size_t i = 0; i < nb.size(); ++i)
          if (excluded_[ids[i]] && color_[nb[i]] == Color::Unknown) assign(nb[i], Color::White);
        Vertex only = kNoVertex;
        std::size_t cands = mate_candidates(v, &only);
        if (cands == 0) {
          fail("black vertex without a possible mate", {v});
          return;
        }
        if (cands == 1) assign(only, Color::Black);
        return;
      }

      case Color::Unknown: {
        int black = 0;
        for (std::size_t i = 0; i < nb.size(); ++i) {
          Vertex w = nb[i];
          if (color_[w] == Color::White) {
            assign(v, Color::Black);
            return;
          }
          if (color_[w] == Color::Black) {
            ++black;
            if (excluded_[ids[i]] || mate_[w] != kNoVertex) {
              assign(v, Color::White);
              return;
            }
          }
        }
        if (black >= 2 || mate_candidates(v) == 0) assign(v, Color::White);
        return;
      }
    }
  }

  const Graph* g_ = nullptr;
  std::vector<Color> color_;
  std::vector<Vertex> mate_;
  std::vector<char> excluded_;
  std::vector<char> removed_;
  std::vector<char> queued_;
  std::vector<Vertex> queue_;
  std::size_t head_ = 0;
  std::optional<Conflict> conflict_;
};

/// Which rule committed an edge or removed a vertex.
enum class Rule : std::uint8_t {
  Diamond,
  Butterfly,
  Propagation,
  LevelM2,
  LevelS3,
  LevelTwoNeighbors,
  LevelSingleton,
  LevelBlockEdge,
  LevelInVertex,
  LevelTwoContacts,
  LevelTriangle,
  IsolatedN4,
  IsolatedN4Edge,
  IsolatedN5,
  Branch,
};

inline std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::Diamond: return "diamond mid-edge";
    case Rule::Butterfly: return "butterfly peripheral edge";
    case Rule::Propagation: return "propagation";
    case Rule::LevelM2: return "edge inside N2";
    case Rule::LevelS3: return "N3 vertex with two N2 neighbours";
    case Rule::LevelTwoNeighbors: return "T_i vertex with two neighbours in T_j";
    case Rule::LevelSingleton: return "singleton T_i";
    case Rule::LevelBlockEdge: return "edge inside T_i";
    case Rule::LevelInVertex: return "surplus in-vertex";
    case Rule::LevelTwoContacts: return "two edges between T_i and T_j";
    case Rule::LevelTriangle: return "triangle with apex in N3";
    case Rule::IsolatedN4: return "isolated N4 vertex";
    case Rule::IsolatedN4Edge: return "isolated N4 edge";
    case Rule::IsolatedN5: return "N5 vertex with two nonadjacent N4 neighbours";
    case Rule::Branch: return "branch";
  }
  return "?";
}

/// Forced matching edges and removed vertices, each tagged with its rule.
struct ReductionLog {
  struct EdgeEntry {
    EdgeRef edge;
    Rule rule;
  };
  struct VertexEntry {
    Vertex vertex;
    Rule rule;
  };

  std::vector<EdgeEntry> forced_edges;
  std::vector<VertexEntry> removed;

  DimCertificate forced_certificate() const {
    std::vector<EdgeRef> e;
    e.reserve(forced_edges.size());
    for (const auto& f : forced_edges) e.push_back(f.edge);
    return DimCertificate(std::move(e));
  }
};

/// Vertex Reduction: `v` is white; its neighbours become black and `v` leaves
/// the working graph.
inline bool vertex_reduction(ColoringState& st, ReductionLog& log, Vertex v, Rule rule) {
  if (!st.assign(v, Color::White) || !st.propagate()) return false;
  if (!st.removed(v)) {
    st.remove(v);
    log.removed.push_back({v, rule});
  }
  return true;
}

/// Edge Reduction: `u` and `v` are black and matched; their other neighbours
/// become white and both endpoints leave the working graph.
inline bool edge_reduction(ColoringState& st, ReductionLog& log, EdgeRef uv, Rule rule) {
  if (!st.assign(uv.u, Color::Black) || !st.assign(uv.v, Color::Black) || !st.propagate()) return false;
  if (st.mate(uv.u) != uv.v) {
    st.fail("edge reduction endpoints did not become mates", {uv.u, uv.v});
    return false;
  }
  for (Vertex w : {uv.u, uv.v}) {
    if (!st.removed(w)) {
      st.remove(w);
      log.removed.push_back({w, rule});
    }
  }
  log.forced_edges.push_back({uv, rule});
  return true;
}

/// Removes every settled vertex (white, or black with a mate) from the
/// working graph, logging mate pairs as forced edges.
inline void sweep(ColoringState& st, ReductionLog& log, Rule rule = Rule::Propagation) {
  const Graph& g = st.graph();
  for (Vertex v = 0; v < g.n(); ++v) {
    if (st.removed(v)) continue;
    if (st.color(v) == Color::White) {
      st.remove(v);
      log.removed.push_back({v, rule});
    } else if (st.mate(v) != kNoVertex) {
      Vertex w = st.mate(v);
      st.remove(v);
      log.removed.push_back({v, rule});
      if (!st.removed(w)) {
        st.remove(w);
        log.removed.push_back({w, rule});
      }
      log.forced_edges.push_back({EdgeRef(v, w), rule});
    }
  }
}

/// Active (not removed) vertices of the state.
inline std::vector<Vertex> active_vertices(const ColoringState& st) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < st.graph().n(); ++v)
    if (!st.removed(v)) out.push_back(v);
  return out;
}

struct PreprocessOptions {
  /// Exclude every edge lying on an induced C4 (no such edge can be matched).
  bool exclude_c4_edges = false;
};

struct PreprocessResult {
  bool feasible = false;
  std::string reason;
  std::optional<PatternWitness> witness;
  ColoringState state;
  ReductionLog log;
};

namespace detail {

inline std::vector<char> active_mask(const ColoringState& st) {
  std::vector<char> m(st.graph().n());
  for (Vertex v = 0; v < st.graph().n(); ++v) m[v] = st.removed(v) ? 0 : 1;
  return m;
}

// Diamond among active vertices; witness order v1, v2, v3, u.
inline std::optional<std::array<Vertex, 4>> active_diamond(const Graph& g, std::span<const char> act) {
  std::vector<Vertex> common;
  for (const auto& e : g.edges()) {
    if (!act[e.u] || !act[e.v]) continue;
    common.clear();
    auto na = g.neighbors(e.u);
    auto nb = g.neighbors(e.v);
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(common));
    std::erase_if(common, [&](Vertex c) { return !act[c]; });
    for (std::size_t a = 0; a < common.size(); ++a)
      for (std::size_t b = a + 1; b < common.size(); ++b)
        if (!g.has_edge(common[a], common[b])) return std::array<Vertex, 4>{common[a], e.u, common[b], e.v};
  }
  return std::nullopt;
}

inline bool active_k4(const Graph& g, std::span<const char> act) {
  std::vector<Vertex> common;
  for (const auto& e : g.edges()) {
    if (!act[e.u] || !act[e.v]) continue;
    common.clear();
    auto na = g.neighbors(e.u);
    auto nb = g.neighbors(e.v);
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(common));
    std::erase_if(common, [&](Vertex c) { return !act[c]; });
    for (std::size_t a = 0; a < common.size(); ++a)
      for (std::size_t b = a + 1; b < common.size(); ++b)
        if (g.has_edge(common[a], common[b])) return true;
  }
  return false;
}

// Butterfly among active vertices; returns the two peripheral edges.
inline std::optional<std::pair<EdgeRef, EdgeRef>> active_butterfly(const Graph& g, std::span<const char> act) {
  std::vector<EdgeRef> inner;
  for (Vertex u = 0; u < g.n(); ++u) {
    if (!act[u]) continue;
    auto nb = g.neighbors(u);
    inner.clear();
    for (Vertex a : nb) {
      if (!act[a]) continue;
      for (Vertex b : g.neighbors(a))
        if (a < b && act[b] && std::binary_search(nb.begin(), nb.end(), b)) inner.emplace_back(a, b);
    }
    for (std::size_t p = 0; p < inner.size(); ++p)
      for (std::size_t q = p + 1; q < inner.size(); ++q) {
        const auto& e1 = inner[p];
        const auto& e2 = inner[q];
        if (e1.contains(e2.u) || e1.contains(e2.v)) continue;
        if (g.has_edge(e1.u, e2.u) || g.has_edge(e1.u, e2.v) || g.has_edge(e1.v, e2.u) ||
            g.has_edge(e1.v, e2.v))
          continue;
        return std::pair{e1, e2};
      }
  }
  return std::nullopt;
}

inline bool edge_on_induced_c4(const Graph& g, const EdgeRef& e) {
  for (Vertex a : g.neighbors(e.u)) {
    if (a == e.v || g.has_edge(a, e.v)) continue;
    for (Vertex b : g.neighbors(e.v)) {
      if (b == e.u || b == a || g.has_edge(b, e.u)) continue;
      if (g.has_edge(a, b)) return true;
    }
  }
  return false;
}

}  // namespace detail

/// Rejects graphs containing K4, then Edge-Reduces every diamond mid-edge and
/// both peripheral edges of every butterfly until none is left, vertex- and
/// edge-reducing everything propagation settles on the way.
inline PreprocessResult preprocess(const Graph& g, const PreprocessOptions& opts = {}) {
  PreprocessResult r;
  r.state = ColoringState(g);
  if (auto k4 = find_induced(g, PatternKind::k4())) {
    r.reason = "K4 found";
    r.witness = std::move(k4);
    return r;
  }
  auto& st = r.state;
  if (opts.exclude_c4_edges) {
    for (EdgeId id = 0; id < g.m(); ++id)
      if (detail::edge_on_induced_c4(g, g.edge(id))) st.exclude(id);
  }
  st.touch_all();
  auto failed = [&](const char* where) {
    std::ostringstream msg;
    msg << where << ": " << (st.conflict() ? st.conflict()->reason : std::string("conflict"));
    r.reason = msg.str();
    return r;
  };
  if (!st.propagate()) return failed("propagation");
  sweep(st, r.log);
  while (true) {
    auto act = detail::active_mask(st);
    if (auto d = detail::active_diamond(g, act)) {
      if (!edge_reduction(st, r.log, EdgeRef((*d)[1], (*d)[3]), Rule::Diamond)) return failed("diamond mid-edge");
      sweep(st, r.log);
      continue;
    }
    if (auto b = detail::active_butterfly(g, act)) {
      if (!edge_reduction(st, r.log, b->first, Rule::Butterfly) ||
          !edge_reduction(st, r.log, b->second, Rule::Butterfly))
        return failed("butterfly peripheral edges");
      sweep(st, r.log);
      continue;
    }
    break;
  }
  r.feasible = true;
  return r;
}

}  // namespace dim
