#include <sstream>

#include <gtest/gtest.h>

#include "dim/io.hpp"
#include "dim/patterns.hpp"

using namespace dim;

namespace {

ParseError parse_error(const std::string& text) {
  try {
    std::istringstream in(text);
    parse_graphs(in);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for: " << text;
  return ParseError(0, 0, "");
}

}  // namespace

TEST(Io, ParsesCommentsAndBlankLines) {
  Graph g = parse_graph("# a path\n3 2\n\n0 1\n# middle\n1 2\n");
  EXPECT_EQ(g.n(), 3u);
  EXPECT_EQ(g.m(), 2u);
  EXPECT_TRUE(g.has_edge(1, 2));
}

TEST(Io, ParsesConcatenatedGraphs) {
  std::istringstream in("2 1\n0 1\n3 0\n4 2\n0 1\n2 3\n");
  auto gs = parse_graphs(in);
  ASSERT_EQ(gs.size(), 3u);
  EXPECT_EQ(gs[1].n(), 3u);
  EXPECT_EQ(gs[1].m(), 0u);
  EXPECT_EQ(gs[2].m(), 2u);
}

TEST(Io, AcceptsCrLf) {
  Graph g = parse_graph("2 1\r\n0 1\r\n");
  EXPECT_EQ(g.m(), 1u);
}

TEST(Io, ErrorPositions) {
  auto e1 = parse_error("3 2\n0 1\n1 x\n");
  EXPECT_EQ(e1.line(), 3u);
  EXPECT_EQ(e1.column(), 3u);

  auto e2 = parse_error("3 2\n0  1\n");
  EXPECT_EQ(e2.line(), 2u);
  EXPECT_EQ(e2.column(), 3u);

  auto e3 = parse_error("3 1\n0 1 2\n");
  EXPECT_EQ(e3.line(), 2u);
  EXPECT_EQ(e3.column(), 4u);

  auto e4 = parse_error("3 2\n0 1\n");
  EXPECT_EQ(e4.line(), 3u);

  auto e5 = parse_error("3 2\n0 1\n# c\n2 2\n");
  EXPECT_EQ(e5.line(), 4u);

  auto e6 = parse_error("3 2\n0 1\n1 0\n");
  EXPECT_EQ(e6.line(), 3u);

  auto e7 = parse_error("3 1\n0 7\n");
  EXPECT_EQ(e7.line(), 2u);

  auto e8 = parse_error("-1 0\n");
  EXPECT_EQ(e8.column(), 1u);

  auto e9 = parse_error("# nothing\n");
  EXPECT_EQ(e9.line(), 2u);

  auto e10 = parse_error("5\n");
  EXPECT_EQ(e10.column(), 2u);
}

TEST(Io, RoundTripIsByteIdentical) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Graph g = random_s115_free(12, 0.3, seed);
    std::string text = to_edge_list(g);
    Graph back = parse_graph(text);
    EXPECT_EQ(back, g);
    EXPECT_EQ(to_edge_list(back), text);
  }
}
