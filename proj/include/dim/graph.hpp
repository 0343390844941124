#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dim {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

/// Raised for malformed graph input (self-loops, parallel edges, ids out of range).
class GraphInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unordered vertex pair stored with u < v.
struct EdgeRef {
  Vertex u = 0;
  Vertex v = 0;

  EdgeRef() = default;
  EdgeRef(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  bool contains(Vertex w) const { return u == w || v == w; }
  Vertex other(Vertex w) const { return w == u ? v : u; }

  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const EdgeRef& e) {
  return os << '(' << e.u << ',' << e.v << ')';
}

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Adjacency lists are sorted; each adjacency entry carries the id of the
/// edge it belongs to, and edge ids index the lexicographically sorted edge
/// list.
class Graph {
 public:
  Graph() = default;

  static Graph build(std::size_t n, std::span<const std::pair<Vertex, Vertex>> pairs) {
    Graph g;
    g.adj_.resize(n);
    g.adj_edge_.resize(n);
    g.edges_.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto [a, b] = pairs[i];
      if (a >= n || b >= n) {
        std::ostringstream msg;
        msg << "edge #" << i << " (" << a << ',' << b << ") has a vertex id >= n=" << n;
        throw GraphInputError(msg.str());
      }
      if (a == b) {
        std::ostringstream msg;
        msg << "edge #" << i << " is a self-loop on vertex " << a;
        throw GraphInputError(msg.str());
      }
      g.edges_.emplace_back(a, b);
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    auto dup = std::adjacent_find(g.edges_.begin(), g.edges_.end());
    if (dup != g.edges_.end()) {
      std::ostringstream msg;
      msg << "parallel edge " << *dup;
      throw GraphInputError(msg.str());
    }
    std::vector<std::uint32_t> deg(n, 0);
    for (const auto& e : g.edges_) {
      ++deg[e.u];
      ++deg[e.v];
    }
    for (Vertex v = 0; v < n; ++v) {
      g.adj_[v].reserve(deg[v]);
      g.adj_edge_[v].reserve(deg[v]);
    }
    // Edges are sorted, so pushing in edge order leaves every list sorted
    // for the smaller endpoint; the larger endpoint needs a sort afterwards.
    for (EdgeId id = 0; id < g.edges_.size(); ++id) {
      const auto& e = g.edges_[id];
      g.adj_[e.u].push_back(e.v);
      g.adj_edge_[e.u].push_back(id);
      g.adj_[e.v].push_back(e.u);
      g.adj_edge_[e.v].push_back(id);
    }
    for (Vertex v = 0; v < n; ++v) {
      auto& nb = g.adj_[v];
      auto& ids = g.adj_edge_[v];
      if (std::is_sorted(nb.begin(), nb.end())) continue;
      std::vector<std::pair<Vertex, EdgeId>> tmp(nb.size());
      for (std::size_t i = 0; i < nb.size(); ++i) tmp[i] = {nb[i], ids[i]};
      std::sort(tmp.begin(), tmp.end());
      for (std::size_t i = 0; i < nb.size(); ++i) {
        nb[i] = tmp[i].first;
        ids[i] = tmp[i].second;
      }
    }
    return g;
  }

  static Graph build(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> pairs) {
    std::vector<std::pair<Vertex, Vertex>> v(pairs);
    return build(n, std::span<const std::pair<Vertex, Vertex>>(v));
  }

  std::size_t n() const { return adj_.size(); }
  std::size_t m() const { return edges_.size(); }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::span<const EdgeId> incident_edges(Vertex v) const { return adj_edge_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }

  const std::vector<EdgeRef>& edges() const { return edges_; }
  const EdgeRef& edge(EdgeId id) const { return edges_[id]; }

  EdgeId edge_id(Vertex a, Vertex b) const {
    if (a >= n() || b >= n()) return kNoEdge;
    const auto& nb = adj_[a];
    auto it = std::lower_bound(nb.begin(), nb.end(), b);
    if (it == nb.end() || *it != b) return kNoEdge;
    return adj_edge_[a][static_cast<std::size_t>(it - nb.begin())];
  }

  bool has_edge(Vertex a, Vertex b) const { return edge_id(a, b) != kNoEdge; }

  std::vector<std::pair<Vertex, Vertex>> edge_pairs() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.emplace_back(e.u, e.v);
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n() == b.n() && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::vector<EdgeId>> adj_edge_;
  std::vector<EdgeRef> edges_;
};

inline Graph build_graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> pairs) {
  return Graph::build(n, pairs);
}

inline Graph build_graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> pairs) {
  return Graph::build(n, pairs);
}

/// A set of edges claimed to be a dominating induced matching.
class DimCertificate {
 public:
  DimCertificate() = default;
  explicit DimCertificate(std::vector<EdgeRef> edges) : edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  }

  const std::vector<EdgeRef>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  bool contains(EdgeRef e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

  friend bool operator==(const DimCertificate&, const DimCertificate&) = default;
  friend auto operator<=>(const DimCertificate&, const DimCertificate&) = default;

 private:
  std::vector<EdgeRef> edges_;
};

inline std::ostream& operator<<(std::ostream& os, const DimCertificate& c) {
  os << '{';
  for (std::size_t i = 0; i < c.edges().size(); ++i) os << (i ? " " : "") << c.edges()[i];
  return os << '}';
}

struct VerifyResult {
  bool ok = false;
  std::optional<EdgeRef> violating_edge;
  std::string diagnostic;

  explicit operator bool() const { return ok; }
};

/// Checks that every edge of `g` is intersected by exactly one member of `m`
/// (a member intersects itself). Reports the first violating edge.
inline VerifyResult verify_dim(const Graph& g, const DimCertificate& m) {
  VerifyResult r;
  std::vector<std::uint32_t> deg_m(g.n(), 0);
  for (const auto& e : m.edges()) {
    if (!g.has_edge(e.u, e.v)) {
      r.violating_edge = e;
      std::ostringstream msg;
      msg << "certificate edge " << e << " is not an edge of the graph";
      r.diagnostic = msg.str();
      return r;
    }
    ++deg_m[e.u];
    ++deg_m[e.v];
  }
  for (const auto& e : g.edges()) {
    std::uint32_t hits = deg_m[e.u] + deg_m[e.v] - (m.contains(e) ? 1U : 0U);
    if (hits != 1) {
      r.violating_edge = e;
      std::ostringstream msg;
      msg << "edge " << e << " is intersected by " << hits << " certificate edges";
      r.diagnostic = msg.str();
      return r;
    }
  }
  r.ok = true;
  return r;
}

/// BFS levels around the edge `xy`: level 0 is {x,y}, level i the vertices at
/// distance i from the edge. Vertices with `active[v] == 0` are skipped when
/// a mask is supplied. Each level is sorted.
inline std::vector<std::vector<Vertex>> distance_levels(const Graph& g, EdgeRef xy,
                                                        std::span<const char> active = {}) {
  if (!g.has_edge(xy.u, xy.v)) {
    std::ostringstream msg;
    msg << "distance_levels: " << xy << " is not an edge";
    throw std::invalid_argument(msg.str());
  }
  auto is_active = [&](Vertex v) { return active.empty() || active[v] != 0; };
  std::vector<int> dist(g.n(), -1);
  std::vector<std::vector<Vertex>> levels;
  levels.push_back({xy.u, xy.v});
  dist[xy.u] = dist[xy.v] = 0;
  while (true) {
    std::vector<Vertex> next;
    for (Vertex v : levels.back()) {
      for (Vertex w : g.neighbors(v)) {
        if (dist[w] >= 0 || !is_active(w)) continue;
        dist[w] = static_cast<int>(levels.size());
        next.push_back(w);
      }
    }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    levels.push_back(std::move(next));
  }
  return levels;
}

/// Connected components, each sorted, ordered by smallest vertex.
inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<char> seen(g.n(), 0);
  std::vector<std::vector<Vertex>> comps;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

/// Induced subgraph on `vertices` (relabelled 0..k-1 in the given order).
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<Vertex> local(g.n(), kNoVertex);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<Vertex>(i);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex v : vertices) {
    for (Vertex w : g.neighbors(v)) {
      if (local[w] != kNoVertex && v < w) pairs.emplace_back(local[v], local[w]);
    }
  }
  return Graph::build(vertices.size(), pairs);
}

/// Relabels vertex v as perm[v].
inline Graph permute(const Graph& g, std::span<const Vertex> perm) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(g.m());
  for (const auto& e : g.edges()) pairs.emplace_back(perm[e.u], perm[e.v]);
  return Graph::build(g.n(), pairs);
}

}  // namespace dim
