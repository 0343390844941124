#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dim/graph.hpp"

namespace dim {

/// Fixed family of induced patterns used by the solver and its validation.
struct PatternKind {
  enum class Tag { K4, Diamond, Butterfly, Claw, Spider, Path, Cycle };

  Tag tag = Tag::K4;
  // Spider leg lengths (i, j, k); `k` alone carries the length for paths and cycles.
  int i = 0;
  int j = 0;
  int k = 0;

  static PatternKind k4() { return {Tag::K4}; }
  static PatternKind diamond() { return {Tag::Diamond}; }
  static PatternKind butterfly() { return {Tag::Butterfly}; }
  static PatternKind claw() { return {Tag::Claw, 1, 1, 1}; }
  static PatternKind spider(int a, int b, int c) { return {Tag::Spider, a, b, c}; }
  static PatternKind path(int len) { return {Tag::Path, 0, 0, len}; }
  static PatternKind cycle(int len) { return {Tag::Cycle, 0, 0, len}; }
  static PatternKind s115() { return spider(1, 1, 5); }

  friend bool operator==(const PatternKind&, const PatternKind&) = default;

  std::string name() const {
    std::ostringstream os;
    switch (tag) {
      case Tag::K4: return "K4";
      case Tag::Diamond: return "diamond";
      case Tag::Butterfly: return "butterfly";
      case Tag::Claw: return "claw";
      case Tag::Spider: os << "S_{" << i << ',' << j << ',' << k << '}'; return os.str();
      case Tag::Path: os << 'P' << k; return os.str();
      case Tag::Cycle: os << 'C' << k; return os.str();
    }
    return "?";
  }

  void validate() const {
    switch (tag) {
      case Tag::Spider:
        if (i < 0 || j < 0 || k < 0) throw std::invalid_argument("spider legs must be >= 0");
        break;
      case Tag::Path:
        if (k < 2) throw std::invalid_argument("P_k needs k >= 2");
        break;
      case Tag::Cycle:
        if (k < 3) throw std::invalid_argument("C_k needs k >= 3");
        break;
      default:
        break;
    }
  }
};

/// Vertices of an induced occurrence, listed in the pattern's role order:
///   diamond   v1, v2, v3, u   (mid-edge is {v2, u})
///   butterfly v1, v2, v3, v4, u (peripheral edges v1v2, v3v4)
///   spider    center, then the legs in (i, j, k) order, each from the center outwards
///   path / cycle in traversal order.
struct PatternWitness {
  PatternKind kind;
  std::vector<Vertex> vertices;
};

/// Canonical graph of a pattern; vertex ids follow the witness role order.
inline Graph make_named(const PatternKind& kind) {
  kind.validate();
  using Tag = PatternKind::Tag;
  std::vector<std::pair<Vertex, Vertex>> e;
  std::size_t n = 0;
  switch (kind.tag) {
    case Tag::K4:
      n = 4;
      e = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
      break;
    case Tag::Diamond:
      n = 4;
      e = {{0, 1}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};
      break;
    case Tag::Butterfly:
      n = 5;
      e = {{0, 1}, {2, 3}, {0, 4}, {1, 4}, {2, 4}, {3, 4}};
      break;
    case Tag::Claw:
    case Tag::Spider: {
      n = 1;
      for (int len : {kind.i, kind.j, kind.k}) {
        Vertex prev = 0;
        for (int s = 0; s < len; ++s) {
          auto cur = static_cast<Vertex>(n++);
          e.emplace_back(prev, cur);
          prev = cur;
        }
      }
      break;
    }
    case Tag::Path:
      n = static_cast<std::size_t>(kind.k);
      for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
      break;
    case Tag::Cycle:
      n = static_cast<std::size_t>(kind.k);
      for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
      e.emplace_back(0, static_cast<Vertex>(n - 1));
      break;
  }
  return Graph::build(n, e);
}

/// True iff the listed vertices (distinct) induce exactly the pattern under
/// the role mapping `vertices[r] <-> r`.
inline bool induces(const Graph& g, const PatternKind& kind, std::span<const Vertex> vertices) {
  Graph pat = make_named(kind);
  if (vertices.size() != pat.n()) return false;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    if (vertices[a] >= g.n()) return false;
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (vertices[a] == vertices[b]) return false;
      bool in_g = g.has_edge(vertices[a], vertices[b]);
      bool in_p = pat.has_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
      if (in_g != in_p) return false;
    }
  }
  return true;
}

namespace detail {

inline std::vector<Vertex> common_neighbors(const Graph& g, Vertex a, Vertex b) {
  std::vector<Vertex> out;
  auto na = g.neighbors(a);
  auto nb = g.neighbors(b);
  std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(out));
  return out;
}

inline std::optional<PatternWitness> find_k4(const Graph& g) {
  for (const auto& e : g.edges()) {
    auto c = common_neighbors(g, e.u, e.v);
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b)
        if (g.has_edge(c[a], c[b])) return PatternWitness{PatternKind::k4(), {e.u, e.v, c[a], c[b]}};
  }
  return std::nullopt;
}

inline std::optional<PatternWitness> find_diamond(const Graph& g) {
  for (const auto& e : g.edges()) {
    auto c = common_neighbors(g, e.u, e.v);
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b)
        if (!g.has_edge(c[a], c[b]))
          return PatternWitness{PatternKind::diamond(), {c[a], e.u, c[b], e.v}};
  }
  return std::nullopt;
}

inline std::optional<PatternWitness> find_butterfly(const Graph& g) {
  for (Vertex u = 0; u < g.n(); ++u) {
    auto nb = g.neighbors(u);
    std::vector<EdgeRef> inner;
    for (Vertex a : nb)
      for (Vertex b : g.neighbors(a))
        if (a < b && std::binary_search(nb.begin(), nb.end(), b)) inner.emplace_back(a, b);
    for (std::size_t p = 0; p < inner.size(); ++p) {
      for (std::size_t q = p + 1; q < inner.size(); ++q) {
        const auto& e1 = inner[p];
        const auto& e2 = inner[q];
        if (e1.contains(e2.u) || e1.contains(e2.v)) continue;
        if (g.has_edge(e1.u, e2.u) || g.has_edge(e1.u, e2.v) || g.has_edge(e1.v, e2.u) ||
            g.has_edge(e1.v, e2.v))
          continue;
        return PatternWitness{PatternKind::butterfly(), {e1.u, e1.v, e2.u, e2.v, u}};
      }
    }
  }
  return std::nullopt;
}

// Backtracking search for an induced spider with the given leg lengths.
class SpiderSearch {
 public:
  SpiderSearch(const Graph& g, std::array<int, 3> legs) : g_(g), legs_(legs), mark_(g.n(), 0) {
    // Long legs first prunes hardest.
    order_ = {0, 1, 2};
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return legs_[a] > legs_[b]; });
  }

  std::optional<std::vector<Vertex>> run() {
    int nonzero = 0;
    for (int l : legs_) nonzero += l > 0 ? 1 : 0;
    for (Vertex c = 0; c < g_.n(); ++c) {
      if (static_cast<int>(g_.degree(c)) < nonzero) continue;
      center_ = c;
      chosen_.assign(1, c);
      mark_[c] = 1;
      for (auto& l : paths_) l.clear();
      bool ok = extend();
      mark_[c] = 0;
      if (ok) {
        std::vector<Vertex> out{c};
        for (int leg = 0; leg < 3; ++leg) out.insert(out.end(), paths_[leg].begin(), paths_[leg].end());
        return out;
      }
    }
    return std::nullopt;
  }

 private:
  // Grows the legs in `order_`, one vertex at a time.
  bool extend() {
    int leg = -1;
    for (int idx = 0; idx < 3; ++idx) {
      int l = order_[idx];
      if (static_cast<int>(paths_[l].size()) < legs_[l]) {
        leg = l;
        break;
      }
    }
    if (leg < 0) return true;
    Vertex prev = paths_[leg].empty() ? center_ : paths_[leg].back();
    for (Vertex w : g_.neighbors(prev)) {
      if (mark_[w]) continue;
      if (!fits(w, prev)) continue;
      mark_[w] = 1;
      chosen_.push_back(w);
      paths_[leg].push_back(w);
      if (extend()) return true;
      paths_[leg].pop_back();
      chosen_.pop_back();
      mark_[w] = 0;
    }
    return false;
  }

  bool fits(Vertex w, Vertex prev) const {
    for (Vertex c : chosen_)
      if (c != prev && g_.has_edge(w, c)) return false;
    return true;
  }

  const Graph& g_;
  std::array<int, 3> legs_;
  std::array<int, 3> order_{};
  std::array<std::vector<Vertex>, 3> paths_;
  std::vector<char> mark_;
  std::vector<Vertex> chosen_;
  Vertex center_ = 0;
};

// Induced path (closed = false) or induced cycle (closed = true) on k vertices.
class PathSearch {
 public:
  PathSearch(const Graph& g, int k, bool closed) : g_(g), k_(k), closed_(closed), mark_(g.n(), 0) {}

  std::optional<std::vector<Vertex>> run() {
    for (Vertex s = 0; s < g_.n(); ++s) {
      path_.assign(1, s);
      mark_[s] = 1;
      bool ok = extend();
      mark_[s] = 0;
      if (ok) return path_;
    }
    return std::nullopt;
  }

 private:
  bool extend() {
    if (static_cast<int>(path_.size()) == k_) return true;
    Vertex prev = path_.back();
    Vertex start = path_.front();
    bool last = static_cast<int>(path_.size()) == k_ - 1;
    for (Vertex w : g_.neighbors(prev)) {
      if (mark_[w]) continue;
      // Cycles are reported from their smallest vertex.
      if (closed_ && w < start) continue;
      bool ok = true;
      for (std::size_t p = 0; p + 1 < path_.size(); ++p) {
        Vertex c = path_[p];
        bool adj = g_.has_edge(w, c);
        bool allowed = closed_ && last && p == 0;
        if (adj != allowed) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      mark_[w] = 1;
      path_.push_back(w);
      if (extend()) return true;
      path_.pop_back();
      mark_[w] = 0;
    }
    return false;
  }

  const Graph& g_;
  int k_;
  bool closed_;
  std::vector<char> mark_;
  std::vector<Vertex> path_;
};

}  // namespace detail

/// Searches for an induced copy of `kind`; returns a verified witness or none.
inline std::optional<PatternWitness> find_induced(const Graph& g, const PatternKind& kind) {
  kind.validate();
  using Tag = PatternKind::Tag;
  std::optional<PatternWitness> w;
  switch (kind.tag) {
    case Tag::K4: w = detail::find_k4(g); break;
    case Tag::Diamond: w = detail::find_diamond(g); break;
    case Tag::Butterfly: w = detail::find_butterfly(g); break;
    case Tag::Claw:
    case Tag::Spider: {
      detail::SpiderSearch s(g, {kind.i, kind.j, kind.k});
      if (auto v = s.run()) w = PatternWitness{kind, std::move(*v)};
      break;
    }
    case Tag::Path: {
      detail::PathSearch s(g, kind.k, false);
      if (auto v = s.run()) w = PatternWitness{kind, std::move(*v)};
      break;
    }
    case Tag::Cycle: {
      if (kind.k == 3) {
        // Triangle: any edge with a common neighbour.
        for (const auto& e : g.edges()) {
          auto c = detail::common_neighbors(g, e.u, e.v);
          if (!c.empty()) {
            w = PatternWitness{kind, {e.u, e.v, c.front()}};
            break;
          }
        }
      } else {
        detail::PathSearch s(g, kind.k, true);
        if (auto v = s.run()) w = PatternWitness{kind, std::move(*v)};
      }
      break;
    }
  }
  if (w && !induces(g, w->kind, w->vertices))
    throw std::logic_error("find_induced produced an invalid witness for " + kind.name());
  return w;
}

/// Erdős–Rényi sample G(n, p) repaired into an S_{1,1,5}-free graph: while a
/// spider is found, the witness vertex of maximum degree (ties: smallest id)
/// is deleted and the remaining vertices are renumbered in order.
inline Graph random_s115_free(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0,1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (coin(rng)) pairs.emplace_back(a, b);
  Graph g = Graph::build(n, pairs);
  while (auto w = find_induced(g, PatternKind::s115())) {
    Vertex victim = w->vertices.front();
    for (Vertex v : w->vertices)
      if (g.degree(v) > g.degree(victim) || (g.degree(v) == g.degree(victim) && v < victim)) victim = v;
    std::vector<Vertex> keep;
    keep.reserve(g.n() - 1);
    for (Vertex v = 0; v < g.n(); ++v)
      if (v != victim) keep.push_back(v);
    g = induced_subgraph(g, keep);
  }
  return g;
}

}  // namespace dim
