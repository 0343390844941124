#include <gtest/gtest.h>

#include "dim/graph.hpp"
#include "support.hpp"

using namespace dim;

TEST(Graph, BuildSortsAndIndexesEdges) {
  Graph g = Graph::build(4, {{2, 1}, {0, 3}, {1, 0}});
  EXPECT_EQ(g.n(), 4u);
  EXPECT_EQ(g.m(), 3u);
  std::vector<EdgeRef> want{{0, 1}, {0, 3}, {1, 2}};
  EXPECT_EQ(g.edges(), want);
  EXPECT_EQ(g.edge_id(1, 0), 0u);
  EXPECT_EQ(g.edge_id(3, 0), 1u);
  EXPECT_EQ(g.edge_id(2, 3), kNoEdge);
  EXPECT_EQ(std::vector<Vertex>(g.neighbors(1).begin(), g.neighbors(1).end()), (std::vector<Vertex>{0, 2}));
  for (Vertex v = 0; v < g.n(); ++v)
    for (std::size_t i = 0; i < g.degree(v); ++i)
      EXPECT_TRUE(g.edge(g.incident_edges(v)[i]).contains(v));
}

TEST(Graph, RejectsBadInput) {
  EXPECT_THROW(Graph::build(3, {{0, 0}}), GraphInputError);
  EXPECT_THROW(Graph::build(3, {{0, 3}}), GraphInputError);
  EXPECT_THROW(Graph::build(3, {{0, 1}, {1, 0}}), GraphInputError);
}

TEST(Verify, EmptyMatchingOfEdgelessGraph) {
  Graph g = Graph::build(3, {});
  EXPECT_TRUE(verify_dim(g, DimCertificate{}));
}

TEST(Verify, PathP4) {
  Graph g = test::path(4);
  EXPECT_TRUE(verify_dim(g, DimCertificate({{1, 2}})));
  auto bad = verify_dim(g, DimCertificate({{0, 1}, {2, 3}}));
  EXPECT_FALSE(bad);
  ASSERT_TRUE(bad.violating_edge);
  EXPECT_EQ(*bad.violating_edge, EdgeRef(1, 2));
  EXPECT_FALSE(verify_dim(g, DimCertificate({{0, 2}})));
  EXPECT_FALSE(verify_dim(g, DimCertificate({{0, 1}})));
}

TEST(Verify, PathP6HasTwoEdgeMatching) {
  Graph g = test::path(6);
  EXPECT_TRUE(verify_dim(g, DimCertificate({{0, 1}, {3, 4}})));
  EXPECT_TRUE(verify_dim(g, DimCertificate({{1, 2}, {4, 5}})));
  EXPECT_FALSE(verify_dim(g, DimCertificate({{0, 1}, {4, 5}})));
}

TEST(Levels, DistanceLevelsOnP6) {
  Graph g = test::path(6);
  auto lv = distance_levels(g, EdgeRef(2, 3));
  ASSERT_EQ(lv.size(), 3u);
  EXPECT_EQ(lv[0], (std::vector<Vertex>{2, 3}));
  EXPECT_EQ(lv[1], (std::vector<Vertex>{1, 4}));
  EXPECT_EQ(lv[2], (std::vector<Vertex>{0, 5}));
  EXPECT_THROW(distance_levels(g, EdgeRef(0, 2)), std::invalid_argument);
}

TEST(Levels, DistanceLevelsRespectMask) {
  Graph g = test::path(6);
  std::vector<char> active{1, 1, 1, 1, 0, 1};
  auto lv = distance_levels(g, EdgeRef(1, 2), active);
  ASSERT_EQ(lv.size(), 2u);
  EXPECT_EQ(lv[1], (std::vector<Vertex>{0, 3}));
}

TEST(Components, SplitAndInduce) {
  Graph g = Graph::build(6, {{0, 1}, {2, 3}, {3, 4}});
  auto cs = connected_components(g);
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_EQ(cs[1], (std::vector<Vertex>{2, 3, 4}));
  Graph h = induced_subgraph(g, cs[1]);
  EXPECT_EQ(h.n(), 3u);
  EXPECT_EQ(h.m(), 2u);
  EXPECT_TRUE(h.has_edge(0, 1));
  EXPECT_TRUE(h.has_edge(1, 2));
}

TEST(Permute, PreservesEdgeCount) {
  std::mt19937_64 rng(3);
  Graph g = test::gnp(12, 0.3, rng);
  auto perm = test::random_perm(g.n(), rng);
  Graph h = permute(g, perm);
  EXPECT_EQ(h.m(), g.m());
  for (const auto& e : g.edges()) EXPECT_TRUE(h.has_edge(perm[e.u], perm[e.v]));
}
