#include <gtest/gtest.h>

#include "dim/levels.hpp"
#include "dim/oracle.hpp"
#include "dim/subsolver.hpp"
#include "support.hpp"

using namespace dim;

namespace {

struct Normalized {
  ColoringState st;
  LevelDecomposition d;
  ReductionLog log;
  bool ok = false;
};

Normalized run(const Graph& g, EdgeRef xy, bool drop_in = true) {
  Normalized r{ColoringState(g), {}, {}, false};
  r.d = decompose(r.st, xy);
  NormalizeOptions o;
  o.drop_surplus_in_vertices = drop_in;
  r.ok = r.st.ok() && normalize(r.st, r.d, r.log, o);
  return r;
}

}  // namespace

TEST(Decompose, P6) {
  Graph g = test::path(6);  // a..f = 0..5
  ColoringState st(g);
  auto d = decompose(st, EdgeRef(1, 2));
  EXPECT_EQ(d.level_set(1), (std::vector<Vertex>{0, 3}));
  EXPECT_EQ(d.level_set(2), (std::vector<Vertex>{4}));
  EXPECT_EQ(d.s2, (std::vector<Vertex>{4}));
  ASSERT_EQ(d.t.size(), 1u);
  EXPECT_EQ(d.t[0], (std::vector<Vertex>{5}));
  EXPECT_TRUE(d.m2.empty());
  EXPECT_TRUE(d.b_xy().empty());
  EXPECT_EQ(d.n2_size, 1u);
}

TEST(Decompose, P5) {
  Graph g = test::path(5);
  ColoringState st(g);
  auto d = decompose(st, EdgeRef(0, 1));
  EXPECT_EQ(d.level_set(1), (std::vector<Vertex>{2}));
  EXPECT_EQ(d.level_set(2), (std::vector<Vertex>{3}));
  ASSERT_EQ(d.t.size(), 1u);
  EXPECT_EQ(d.t[0], (std::vector<Vertex>{4}));
}

TEST(Decompose, C6) {
  Graph g = test::cycle(6);
  ColoringState st(g);
  auto d = decompose(st, EdgeRef(0, 1));
  EXPECT_EQ(d.level_set(2), (std::vector<Vertex>{3, 4}));
  ASSERT_EQ(d.m2.size(), 1u);
  EXPECT_EQ(d.m2[0], EdgeRef(3, 4));
  EXPECT_TRUE(d.s2.empty());
}

TEST(Decompose, P6DistanceLevels) {
  Graph g = test::path(6);
  auto lv = distance_levels(g, EdgeRef(1, 2));
  ASSERT_EQ(lv.size(), 4u);
  EXPECT_EQ(lv[2], (std::vector<Vertex>{4}));
  EXPECT_EQ(lv[3], (std::vector<Vertex>{5}));
}

TEST(Normalize, P6ForcesPendantEdge) {
  Graph g = test::path(6);
  auto r = run(g, EdgeRef(1, 2));
  ASSERT_TRUE(r.ok);
  EXPECT_TRUE(r.st.complete());
  EXPECT_EQ(r.st.matching(), DimCertificate({{1, 2}, {4, 5}}));
}

TEST(Normalize, P5ForcesPendantEdge) {
  Graph g = test::path(5);
  auto r = run(g, EdgeRef(0, 1));
  ASSERT_TRUE(r.ok);
  EXPECT_EQ(r.st.matching(), DimCertificate({{0, 1}, {3, 4}}));
  EXPECT_TRUE(verify_dim(g, r.st.matching()));
}

TEST(Normalize, EmptyBlockFails) {
  Graph g = test::path(4);
  auto r = run(g, EdgeRef(0, 1));
  EXPECT_FALSE(r.ok);
}

TEST(Normalize, P6MiddleEdgeFails) {
  Graph g = test::path(6);
  auto r = run(g, EdgeRef(2, 3));
  EXPECT_FALSE(r.ok);
}

TEST(Normalize, C6MatchesOppositeEdge) {
  Graph g = test::cycle(6);
  auto r = run(g, EdgeRef(0, 1));
  ASSERT_TRUE(r.ok);
  EXPECT_EQ(r.st.matching(), DimCertificate({{0, 1}, {3, 4}}));
}

TEST(Normalize, PostconditionsHold) {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int it = 0; it < 400; ++it) {
    Graph g = test::planted(4, 6, 0.25, rng);
    for (const auto& xy : g.edges()) {
      auto r = run(g, xy);
      if (!r.ok) continue;
      ++checked;
      refresh(r.st, r.d);
      EXPECT_TRUE(r.d.m2.empty());
      EXPECT_TRUE(r.d.s3.empty());
      for (std::size_t i = 0; i < r.d.t.size(); ++i) {
        EXPECT_GE(r.d.t[i].size(), 2u);
        EXPECT_LE(r.d.in_vertices[i].size(), 1u);
      }
    }
  }
  EXPECT_GT(checked, 100);
}

// Every colour fixed by decompose + normalize (without in-vertex deletion)
// agrees with every d.i.m. containing xy.
TEST(Normalize, ForcedColoursAreSound) {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 400; ++it) {
    Graph g = it % 2 ? test::planted(3, 1 + it % 3, 0.35, rng) : test::gnp(4 + it % 4, 0.35, rng);
    auto dims = enumerate_dims(g);
    for (const auto& xy : g.edges()) {
      std::vector<const DimCertificate*> with;
      for (const auto& m : dims)
        if (m.contains(xy)) with.push_back(&m);
      auto r = run(g, xy, false);
      if (!r.ok) {
        EXPECT_TRUE(with.empty()) << "normalize rejected an edge of a d.i.m.";
        continue;
      }
      for (const auto* m : with) {
        std::vector<char> black(g.n(), 0);
        for (const auto& e : m->edges()) black[e.u] = black[e.v] = 1;
        for (Vertex v = 0; v < g.n(); ++v) {
          if (r.st.color(v) == Color::Unknown) continue;
          EXPECT_EQ(r.st.color(v) == Color::Black, black[v] != 0) << "vertex " << v;
        }
        DimCertificate forced = r.log.forced_certificate();
        for (const auto& e : forced.edges()) EXPECT_TRUE(m->contains(e));
      }
    }
  }
}

// In-vertex deletion may discard some d.i.m.s but never all of them.
TEST(Normalize, InVertexDeletionPreservesExistence) {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 400; ++it) {
    Graph g = test::planted(3, 2 + it % 4, 0.3, rng);
    auto dims = enumerate_dims(g);
    for (const auto& xy : g.edges()) {
      bool expect = std::any_of(dims.begin(), dims.end(), [&](const auto& m) { return m.contains(xy); });
      auto r = run(g, xy, true);
      bool got = r.ok && constrained_subsolver(r.st);
      ASSERT_EQ(got, expect);
      if (got) {
        EXPECT_TRUE(verify_dim(g, r.st.matching()));
        EXPECT_TRUE(r.st.matching().contains(xy));
      }
    }
  }
}
