#include <gtest/gtest.h>

#include <random>

#include <hyperlag/io.hpp>

using namespace hyperlag;

TEST(Parse, Examples) {
  EXPECT_EQ(parse("n 2\ne 1\ne 2\ne 1 2"), complete(2, {1, 2}));
  EXPECT_EQ(parse("n 3\ne 1 2\ne 2 3\ne 1 3"), complete(3, {2}));
}

TEST(Parse, CommentsBlankLinesAndOrder) {
  auto h = parse("# header\n\nn 3   # three vertices\ne 3 1\n  e 2 # singleton\n");
  EXPECT_EQ(h, Hypergraph(3, {{1, 3}, {2}}));
}

TEST(Parse, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string &text) {
    try {
      parse(text);
    } catch (const ParseError &e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("n 2\ne 3"), 2u);
  EXPECT_EQ(line_of("n 2\ne 1 2\n\ne 2 1"), 4u);
  EXPECT_EQ(line_of("n 2\ne"), 2u);
  EXPECT_EQ(line_of("n 2\ne 1 1"), 2u);
  EXPECT_EQ(line_of("e 1\nn 2"), 1u);
  EXPECT_EQ(line_of("n x"), 1u);
  EXPECT_EQ(line_of("n 2\nn 2"), 2u);
  EXPECT_EQ(line_of("n 2\nq 1"), 2u);
  EXPECT_EQ(line_of("n 2\ne 1a"), 2u);
  EXPECT_EQ(line_of("n 0"), 1u);
  EXPECT_NE(line_of(""), 0u);
}

TEST(Serialize, SortedBySizeThenLex) {
  Hypergraph h(3, {{2, 3}, {3}, {1, 2}, {1}, {1, 2, 3}});
  EXPECT_EQ(serialize(h), "n 3\ne 1\ne 3\ne 1 2\ne 2 3\ne 1 2 3\n");
}

TEST(Serialize, RoundTripProperty) {
  std::mt19937_64 rng(21);
  std::bernoulli_distribution coin(0.4);
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + static_cast<int>(rng() % 6);
    std::vector<Edge> edges;
    for (int r = 1; r <= std::min(n, 4); ++r)
      for_each_combination(n, r, [&](const Edge &c) {
        if (coin(rng))
          edges.push_back(c);
      });
    Hypergraph h(n, edges);
    EXPECT_EQ(parse(serialize(h)), h);
  }
}
