#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dim/coloring.hpp"
#include "dim/graph.hpp"

namespace dim {

namespace detail {

// Per-vertex DP state: white, black without a counted black neighbour, black
// with exactly one.
enum : std::uint8_t { kW = 0, kB0 = 1, kB1 = 2 };

inline int pow3(int e) {
  int r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

inline int digit(int code, int pos) { return code / pow3(pos) % 3; }

inline int with_digit(int code, int pos, int d) { return code + (d - digit(code, pos)) * pow3(pos); }

// Maximum cardinality search; returns the elimination position of every
// vertex (reverse visit order).
inline std::vector<int> mcs_elimination_positions(const Graph& h) {
  const int n = static_cast<int>(h.n());
  std::vector<int> weight(n, 0), pos(n, -1);
  std::vector<char> visited(n, 0);
  for (int step = n - 1; step >= 0; --step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!visited[v] && (best < 0 || weight[v] > weight[best])) best = v;
    visited[best] = 1;
    pos[best] = step;
    for (Vertex w : h.neighbors(best))
      if (!visited[w]) ++weight[w];
  }
  return pos;
}

}  // namespace detail

/// Exact d.i.m. completion for a chordal graph of clique number at most 3,
/// by dynamic programming over the clique tree of a perfect elimination
/// ordering.
///
/// `allowed[v]` restricts vertex v (bit 0: white allowed, bit 1: black
/// allowed); `excluded[id]` forbids edge `id` of `h` as a matching edge.
/// Returns a complete colouring, or nothing if none exists. Throws
/// std::invalid_argument when `h` is not chordal or has a 4-clique.
inline std::optional<std::vector<Color>> treewidth2_dim_dp(const Graph& h, std::span<const std::uint8_t> allowed,
                                                           std::span<const char> excluded) {
  using namespace detail;
  const int n = static_cast<int>(h.n());
  if (n == 0) return std::vector<Color>{};
  auto pos = mcs_elimination_positions(h);
  std::vector<int> order(n);
  for (int v = 0; v < n; ++v) order[pos[v]] = v;

  // bag[v] = v followed by its later neighbours in elimination order.
  std::vector<std::vector<int>> bag(n);
  std::vector<int> parent(n, -1);
  for (int v = 0; v < n; ++v) {
    bag[v].push_back(v);
    std::vector<int> later;
    for (Vertex w : h.neighbors(v))
      if (pos[w] > pos[v]) later.push_back(static_cast<int>(w));
    std::sort(later.begin(), later.end(), [&](int a, int b) { return pos[a] < pos[b]; });
    if (later.size() > 2) throw std::invalid_argument("treewidth2_dim_dp: clique of size > 3");
    if (later.size() == 2 && !h.has_edge(later[0], later[1]))
      throw std::invalid_argument("treewidth2_dim_dp: graph is not chordal");
    if (!later.empty()) parent[v] = later[0];
    bag[v].insert(bag[v].end(), later.begin(), later.end());
  }
  std::vector<std::vector<int>> children(n);
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    if (parent[v] >= 0) children[parent[v]].push_back(v);
  }

  auto bag_index = [&](int node, int w) {
    for (std::size_t i = 0; i < bag[node].size(); ++i)
      if (bag[node][i] == w) return static_cast<int>(i);
    throw std::logic_error("treewidth2_dim_dp: separator not contained in parent bag");
  };
  auto is_excl = [&](int a, int b) { return excluded[h.edge_id(a, b)] != 0; };

  constexpr int kNone = -1;
  // witness[v][key] = full bag state of node v realising separator state key.
  std::vector<std::array<int, 27>> witness(n);
  // trace[v][k][state] = (state before child k, key chosen for child k).
  std::vector<std::vector<std::array<std::pair<int, int>, 27>>> trace(n);

  for (int i = 0; i < n; ++i) {
    const int v = order[i];
    const auto& b = bag[v];
    const int size = static_cast<int>(b.size());
    const int states = pow3(size);
    std::array<char, 27> reach{};
    for (int mask = 0; mask < (1 << size); ++mask) {
      bool ok = true;
      std::array<int, 3> cnt{};
      for (int j = 0; j < size && ok; ++j) {
        int black = (mask >> j) & 1;
        if (!(allowed[b[j]] & (black ? 2 : 1))) ok = false;
      }
      for (int j = 1; j < size && ok; ++j) {
        bool bv = mask & 1, bw = (mask >> j) & 1;
        if (!bv && !bw) ok = false;
        else if (bv && bw) {
          if (is_excl(v, b[j])) ok = false;
          ++cnt[0];
          ++cnt[j];
        }
      }
      if (!ok) continue;
      int code = 0;
      for (int j = 0; j < size && ok; ++j) {
        bool black = (mask >> j) & 1;
        if (black && cnt[j] > 1) ok = false;
        code += (black ? 1 + cnt[j] : kW) * pow3(j);
      }
      if (ok) reach[code] = 1;
    }

    trace[v].resize(children[v].size());
    for (std::size_t k = 0; k < children[v].size(); ++k) {
      const int c = children[v][k];
      const int csep = static_cast<int>(bag[c].size()) - 1;
      std::array<int, 2> where{};
      for (int j = 0; j < csep; ++j) where[j] = bag_index(v, bag[c][j + 1]);
      std::array<char, 27> next{};
      auto& tr = trace[v][k];
      tr.fill({kNone, kNone});
      for (int s = 0; s < states; ++s) {
        if (!reach[s]) continue;
        for (int key = 0; key < pow3(csep); ++key) {
          if (witness[c][key] == kNone) continue;
          int t = s;
          bool ok = true;
          for (int j = 0; j < csep && ok; ++j) {
            int a = digit(s, where[j]);
            int m = digit(key, j);
            if ((a == kW) != (m == kW)) ok = false;
            else if (a != kW) {
              int count = (a - 1) + (m - 1);
              if (count > 1) ok = false;
              else t = with_digit(t, where[j], 1 + count);
            }
          }
          if (ok && !next[t]) {
            next[t] = 1;
            tr[t] = {s, key};
          }
        }
      }
      reach = next;
    }

    witness[v].fill(kNone);
    for (int s = 0; s < states; ++s) {
      if (!reach[s]) continue;
      if (digit(s, 0) == kB0) continue;
      int key = s / 3;
      if (witness[v][key] == kNone) witness[v][key] = s;
    }
  }

  std::vector<int> final_state(n, kNone);
  for (int i = n - 1; i >= 0; --i) {
    const int v = order[i];
    if (parent[v] < 0) {
      if (witness[v][0] == kNone) return std::nullopt;
      final_state[v] = witness[v][0];
    }
    int s = final_state[v];
    for (int k = static_cast<int>(children[v].size()) - 1; k >= 0; --k) {
      auto [prev, key] = trace[v][k][s];
      final_state[children[v][k]] = witness[children[v][k]][key];
      s = prev;
    }
  }
  std::vector<Color> out(n);
  for (int v = 0; v < n; ++v) out[v] = detail::digit(final_state[v], 0) == detail::kW ? Color::White : Color::Black;
  return out;
}

/// Completes the connected set `component` of unsettled vertices of a
/// propagated state with the dynamic program and propagates the result.
/// Returns false if no completion exists.
inline bool treewidth2_complete(ColoringState& st, std::span<const Vertex> component) {
  const Graph& g = st.graph();
  Graph h = induced_subgraph(g, component);
  std::vector<std::uint8_t> allowed(h.n(), 3);
  for (std::size_t i = 0; i < component.size(); ++i) {
    Color c = st.color(component[i]);
    if (c == Color::Black) allowed[i] = 2;
    if (c == Color::White) allowed[i] = 1;
  }
  std::vector<char> excl(h.m(), 0);
  for (EdgeId id = 0; id < h.m(); ++id) {
    const auto& e = h.edge(id);
    excl[id] = st.is_excluded(component[e.u], component[e.v]) ? 1 : 0;
  }
  auto colors = treewidth2_dim_dp(h, allowed, excl);
  if (!colors) return false;
  for (std::size_t i = 0; i < component.size(); ++i)
    if (!st.assign(component[i], (*colors)[i])) return false;
  return st.propagate();
}

}  // namespace dim
