#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dim/graph.hpp"
#include "dim/io.hpp"

namespace dim::test {

inline Graph from_string(const std::string& n_and_edges) { return parse_graph(n_and_edges); }

/// Graph on n vertices whose edge set is the subset `mask` of all pairs (a<b, row order).
inline Graph from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<std::pair<Vertex, Vertex>> e;
  std::size_t bit = 0;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b, ++bit)
      if (mask >> bit & 1) e.emplace_back(a, b);
  return Graph::build(n, e);
}

inline Graph gnp(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (coin(rng)) e.emplace_back(a, b);
  return Graph::build(n, e);
}

/// Graph with a known d.i.m.: k matching edges, w extra vertices each joined
/// to a random non-empty set of matched vertices, then randomly relabelled.
inline Graph planted(int k, int w, double p, std::mt19937_64& rng) {
  const int n = 2 * k + w;
  std::vector<std::pair<Vertex, Vertex>> e;
  std::bernoulli_distribution coin(p);
  for (int i = 0; i < k; ++i) e.emplace_back(2 * i, 2 * i + 1);
  for (int x = 0; x < w; ++x) {
    auto wv = static_cast<Vertex>(2 * k + x);
    bool any = false;
    for (int b = 0; b < 2 * k; ++b)
      if (coin(rng)) {
        e.emplace_back(b, wv);
        any = true;
      }
    if (!any) e.emplace_back(std::uniform_int_distribution<int>(0, 2 * k - 1)(rng), wv);
  }
  std::vector<Vertex> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (auto& [a, b] : e) {
    a = perm[a];
    b = perm[b];
  }
  return Graph::build(n, e);
}

inline Graph path(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph::build(n, e);
}

inline Graph cycle(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  e.emplace_back(0, static_cast<Vertex>(n - 1));
  return Graph::build(n, e);
}

inline std::vector<Vertex> random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<Vertex> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Vertex>(i);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

inline std::string sample(const std::string& name) { return std::string(DIM_SAMPLES_DIR) + "/" + name; }

}  // namespace dim::test
