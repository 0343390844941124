#include <cstdlib>

#include <gtest/gtest.h>

#include "dim/oracle.hpp"
#include "dim/patterns.hpp"
#include "support.hpp"

using namespace dim;

TEST(Oracle, NamedGraphs) {
  EXPECT_TRUE(brute_force_dim(test::path(2)).exists);
  EXPECT_TRUE(brute_force_dim(test::path(3)).exists);
  EXPECT_FALSE(brute_force_dim(test::cycle(4)).exists);
  EXPECT_FALSE(brute_force_dim(test::cycle(5)).exists);
  EXPECT_TRUE(brute_force_dim(test::cycle(6)).exists);
  EXPECT_FALSE(brute_force_dim(make_named(PatternKind::k4())).exists);
  EXPECT_TRUE(brute_force_dim(make_named(PatternKind::claw())).exists);
}

TEST(Oracle, Counts) {
  auto p3 = brute_force_dim(test::path(3), true);
  ASSERT_TRUE(p3.count);
  EXPECT_EQ(*p3.count, 2u);
  auto c6 = brute_force_dim(test::cycle(6), true);
  EXPECT_EQ(*c6.count, 3u);
  auto c3 = brute_force_dim(test::cycle(3), true);
  EXPECT_EQ(*c3.count, 3u);
  auto k4 = brute_force_dim(make_named(PatternKind::k4()), true);
  EXPECT_EQ(*k4.count, 0u);
}

TEST(Oracle, EnumerateP6) {
  auto dims = enumerate_dims(test::path(6));
  std::vector<DimCertificate> want{DimCertificate({{0, 1}, {3, 4}}), DimCertificate({{1, 2}, {4, 5}})};
  EXPECT_EQ(dims, want);
}

TEST(Oracle, EnumerateSmallShapes) {
  auto bf = enumerate_dims(make_named(PatternKind::butterfly()));
  ASSERT_EQ(bf.size(), 1u);
  EXPECT_EQ(bf[0], DimCertificate({{0, 1}, {2, 3}}));
  auto d = enumerate_dims(make_named(PatternKind::diamond()));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0], DimCertificate({{1, 3}}));
  // Each centre-leaf edge alone is a d.i.m. of the claw.
  auto claw = enumerate_dims(make_named(PatternKind::claw()));
  std::vector<DimCertificate> want{DimCertificate({{0, 1}}), DimCertificate({{0, 2}}), DimCertificate({{0, 3}})};
  EXPECT_EQ(claw, want);
}

TEST(Oracle, BudgetIsReported) {
  Graph g = test::cycle(60);
  auto r = brute_force_dim(g, false, 5);
  EXPECT_TRUE(r.budget_exceeded);
  EXPECT_FALSE(r.exists);
  EXPECT_THROW(enumerate_dims(g, 5), std::runtime_error);
}

TEST(Oracle, BudgetFromEnvironment) {
  ::setenv("DIM_ORACLE_BUDGET", "1234", 1);
  EXPECT_EQ(default_oracle_budget(), 1234u);
  ::setenv("DIM_ORACLE_BUDGET", "junk", 1);
  EXPECT_EQ(default_oracle_budget(), 100'000'000u);
  ::unsetenv("DIM_ORACLE_BUDGET");
  EXPECT_EQ(default_oracle_budget(), 100'000'000u);
}

// Two independent enumerations of the same definition must coincide.
TEST(Oracle, MatchesSubsetFilter) {
  std::mt19937_64 rng(61);
  for (int it = 0; it < 1500; ++it) {
    Graph g = test::gnp(3 + it % 6, 0.2 + 0.1 * (it % 5), rng);
    if (g.m() > 16) continue;
    auto a = enumerate_dims(g);
    auto b = subset_filter_dims(g);
    ASSERT_EQ(a, b);
    auto r = brute_force_dim(g, true);
    EXPECT_EQ(*r.count, a.size());
    EXPECT_EQ(r.exists, !a.empty());
    if (r.witness) EXPECT_TRUE(verify_dim(g, *r.witness));
  }
}

TEST(Oracle, SubsetFilterRejectsLargeInput) {
  EXPECT_THROW(subset_filter_dims(test::path(30)), std::invalid_argument);
}
