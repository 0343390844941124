#include <gtest/gtest.h>

#include "dim/oracle.hpp"
#include "dim/patterns.hpp"
#include "dim/treewidth_dp.hpp"
#include "support.hpp"

using namespace dim;

namespace {

std::optional<std::vector<Color>> run_dp(const Graph& h, std::vector<std::uint8_t> allowed = {},
                                         std::vector<char> excluded = {}) {
  if (allowed.empty()) allowed.assign(h.n(), 3);
  if (excluded.empty()) excluded.assign(h.m(), 0);
  return treewidth2_dim_dp(h, allowed, excluded);
}

// The black vertices of a complete colouring form a d.i.m. iff whites are
// independent and every black has exactly one black neighbour.
DimCertificate matching_of(const Graph& h, const std::vector<Color>& c) {
  std::vector<EdgeRef> m;
  for (const auto& e : h.edges())
    if (c[e.u] == Color::Black && c[e.v] == Color::Black) m.push_back(e);
  return DimCertificate(std::move(m));
}

// Random chordal graph of clique number <= 3: each new vertex attaches to a
// vertex or to an edge of the graph built so far (a partial 2-tree).
Graph random_partial_2tree(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex v = 1; v < n; ++v) {
    auto pick = std::uniform_int_distribution<std::size_t>(0, e.size() + v - 1)(rng);
    if (pick < e.size() && rng() % 2) {
      auto [a, b] = e[pick];
      e.emplace_back(a, v);
      e.emplace_back(b, v);
    } else if (rng() % 5) {
      e.emplace_back(std::uniform_int_distribution<Vertex>(0, v - 1)(rng), v);
    }
  }
  return Graph::build(n, e);
}

}  // namespace

TEST(TreewidthDp, SingleEdge) {
  auto c = run_dp(test::path(2));
  ASSERT_TRUE(c);
  EXPECT_EQ((*c)[0], Color::Black);
  EXPECT_EQ((*c)[1], Color::Black);
}

TEST(TreewidthDp, P3) {
  Graph g = test::path(3);
  auto c = run_dp(g);
  ASSERT_TRUE(c);
  EXPECT_EQ((*c)[1], Color::Black);
  EXPECT_TRUE(verify_dim(g, matching_of(g, *c)));
}

TEST(TreewidthDp, Triangle) {
  Graph g = test::cycle(3);
  auto c = run_dp(g);
  ASSERT_TRUE(c);
  auto m = matching_of(g, *c);
  EXPECT_EQ(m.size(), 1u);
  EXPECT_TRUE(verify_dim(g, m));
}

TEST(TreewidthDp, HonoursConstraints) {
  Graph g = test::path(3);
  auto c = run_dp(g, {2, 3, 3});
  ASSERT_TRUE(c);
  EXPECT_EQ((*c)[2], Color::White);
  EXPECT_FALSE(run_dp(g, {}, {1, 1}));
  EXPECT_FALSE(run_dp(g, {3, 1, 3}));
}

TEST(TreewidthDp, EdgelessAndEmpty) {
  auto c = run_dp(Graph::build(2, {}));
  ASSERT_TRUE(c);
  EXPECT_EQ((*c)[0], Color::White);
  EXPECT_TRUE(run_dp(Graph::build(0, {})));
}

TEST(TreewidthDp, RejectsUnsupportedInput) {
  EXPECT_THROW(run_dp(test::cycle(4)), std::invalid_argument);
  EXPECT_THROW(run_dp(make_named(PatternKind::k4())), std::invalid_argument);
}

TEST(TreewidthDp, MatchesOracleOnChordalGraphs) {
  std::mt19937_64 rng(12);
  int with_dim = 0;
  for (int it = 0; it < 600; ++it) {
    Graph g = random_partial_2tree(3 + it % 10, rng);
    auto dims = enumerate_dims(g);
    // Random constraints drawn from a d.i.m. when one exists, else arbitrary.
    std::vector<std::uint8_t> allowed(g.n(), 3);
    std::vector<char> excluded(g.m(), 0);
    if (it % 2) {
      for (Vertex v = 0; v < g.n(); ++v)
        if (rng() % 4 == 0) allowed[v] = static_cast<std::uint8_t>(1 + rng() % 2);
      for (EdgeId e = 0; e < g.m(); ++e) excluded[e] = rng() % 6 == 0;
    }
    bool expect = false;
    for (const auto& m : dims) {
      std::vector<char> black(g.n(), 0);
      for (const auto& e : m.edges()) black[e.u] = black[e.v] = 1;
      bool ok = true;
      for (Vertex v = 0; v < g.n() && ok; ++v) ok = allowed[v] >> (black[v] ? 1 : 0) & 1;
      for (EdgeId e = 0; e < g.m() && ok; ++e) ok = !(excluded[e] && m.contains(g.edge(e)));
      if (ok) {
        expect = true;
        break;
      }
    }
    auto c = run_dp(g, allowed, excluded);
    ASSERT_EQ(c.has_value(), expect) << "iteration " << it;
    if (c) {
      ++with_dim;
      auto m = matching_of(g, *c);
      EXPECT_TRUE(verify_dim(g, m));
      for (const auto& e : m.edges()) EXPECT_FALSE(excluded[g.edge_id(e.u, e.v)]);
      for (Vertex v = 0; v < g.n(); ++v) EXPECT_TRUE(allowed[v] >> ((*c)[v] == Color::Black ? 1 : 0) & 1);
    }
  }
  EXPECT_GT(with_dim, 50);
}
