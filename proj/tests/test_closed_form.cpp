#include <gtest/gtest.h>

#include <random>

#include <hyperlag/closed_form.hpp>

#include "oracles.hpp"

using namespace hyperlag;

namespace {

Hypergraph random_12(std::mt19937_64 &rng, int n, double p1, double p2) {
  std::bernoulli_distribution c1(p1), c2(p2);
  std::vector<Edge> edges;
  for (int v = 1; v <= n; ++v)
    if (c1(rng))
      edges.push_back({v});
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (c2(rng))
        edges.push_back({a, b});
  return Hypergraph(n, std::move(edges));
}

Hypergraph cocktail_party(int pairs) {
  std::vector<Edge> edges;
  const int n = 2 * pairs;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (!(a % 2 == 1 && b == a + 1))
        edges.push_back({a, b});
  return Hypergraph(n, std::move(edges));
}

} // namespace

TEST(MaxClique, Examples) {
  EXPECT_EQ(max_clique(complete(3, {2})).size, 3u);
  EXPECT_EQ(max_clique(Hypergraph(3, {{1, 2}, {2, 3}})).size, 2u);
  auto cp = cocktail_party(3);
  EXPECT_EQ(static_cast<int>(max_clique(cp).size), oracle::max_clique(cp));
  EXPECT_EQ(max_clique(cp).size, 3u);
  EXPECT_EQ(max_clique(Hypergraph(4)).size, 1u);
  EXPECT_THROW(max_clique(Hypergraph(2, {{1}})), std::invalid_argument);
}

TEST(MaxClique, LexicographicallySmallestWitness) {
  // Two triangles {2,3,4} and {1,5,6}; the second sorts first.
  Hypergraph g(6, {{2, 3}, {3, 4}, {2, 4}, {1, 5}, {5, 6}, {1, 6}});
  EXPECT_EQ(max_clique(g).witness, (std::vector<Vertex>{1, 5, 6}));
}

TEST(MaxClique, AgreesWithBruteForce) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 150; ++i) {
    const int n = 1 + static_cast<int>(rng() % 12);
    auto g = random_12(rng, n, 0.0, 0.2 + 0.6 * (i % 5) / 4.0);
    auto r = max_clique(g);
    EXPECT_EQ(static_cast<int>(r.size), oracle::max_clique(g));
    EXPECT_EQ(r.witness.size(), r.size);
    for (std::size_t a = 0; a < r.witness.size(); ++a)
      for (std::size_t b = a + 1; b < r.witness.size(); ++b)
        EXPECT_TRUE(oracle::has_pair(g, r.witness[a], r.witness[b]));
  }
}

TEST(MotzkinStraus, Examples) {
  EXPECT_EQ(motzkin_straus_value(complete(4, {2})), Rational(3, 8));
  EXPECT_EQ(motzkin_straus_value(Hypergraph(5, {{1, 4}, {2, 4}, {3, 5}, {1, 5}})), Rational(1, 4));
  EXPECT_EQ(motzkin_straus_value(Hypergraph(3)), Rational(0));
}

TEST(MaxComplete12Order, Examples) {
  EXPECT_EQ(max_complete_12_order(complete(5, {1, 2})), 5);
  EXPECT_EQ(max_complete_12_order(Hypergraph(3, {{1}, {2, 3}})), 1);
  EXPECT_EQ(max_complete_12_order(complete(3, {2})), 0);
  EXPECT_THROW(max_complete_12_order(Hypergraph(3, {{1, 2, 3}})), std::invalid_argument);
}

TEST(MaxComplete12Order, AgreesWithSubsetEnumeration) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + static_cast<int>(rng() % 8);
    auto h = random_12(rng, n, 0.6, 0.6);
    int best = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<Edge> sub;
      std::vector<Vertex> s;
      for (int v = 0; v < n; ++v)
        if (mask >> v & 1)
          s.push_back(v + 1);
      bool ok = true;
      for (Vertex v : s)
        ok &= h.has_edge({v});
      for (std::size_t a = 0; a < s.size() && ok; ++a)
        for (std::size_t b = a + 1; b < s.size() && ok; ++b)
          ok &= h.has_edge({s[a], s[b]});
      if (ok)
        best = std::max(best, static_cast<int>(s.size()));
    }
    EXPECT_EQ(max_complete_12_order(h), best);
  }
}

TEST(Lagrangian12Exact, Examples) {
  auto k3 = lagrangian12_exact(complete(3, {1, 2}));
  EXPECT_EQ(k3.value, Rational(5, 3));
  EXPECT_EQ(k3.case_tag, Exact12Case::AllSingletons);

  Hypergraph one(2, {{1}, {1, 2}});
  auto r = lagrangian12_exact(one);
  EXPECT_EQ(r.value, Rational(9, 8));
  EXPECT_EQ(r.case_tag, Exact12Case::OneHeavySingleton);
  EXPECT_NEAR(r.witness_weighting[0], 0.75, 1e-15);
  EXPECT_NEAR(r.witness_weighting[1], 0.25, 1e-15);
  // x + 2x(1-x) on [0,1], independently
  EXPECT_NEAR(oracle::grid_max(one, 4000), 1.125, 1e-9);
  EXPECT_NEAR(maximize(one).value, 1.125, 1e-6);

  auto k4 = lagrangian12_exact(complete(4, {2}));
  EXPECT_EQ(k4.value, Rational(3, 4));
  EXPECT_EQ(k4.case_tag, Exact12Case::NoSingletons);
}

TEST(Lagrangian12Exact, DegenerateCases) {
  auto empty = lagrangian12_exact(Hypergraph(3));
  EXPECT_EQ(empty.value, Rational(0));
  EXPECT_EQ(empty.case_tag, Exact12Case::Empty);

  auto lone = lagrangian12_exact(Hypergraph(3, {{2}, {1, 3}}));
  EXPECT_EQ(lone.value, Rational(1));
  EXPECT_EQ(lone.case_tag, Exact12Case::SingleVertex);
  EXPECT_EQ(lone.support, (std::vector<Vertex>{2}));

  EXPECT_THROW(lagrangian12_exact(Hypergraph(3, {{1, 2, 3}})), std::invalid_argument);
}

TEST(Lagrangian12Exact, OneSingletonValueIsFiveQuartersMinusQuarterK) {
  for (int k = 2; k <= 7; ++k) {
    auto h = complete(k, {2}).with_edge({1});
    auto r = lagrangian12_exact(h);
    EXPECT_EQ(r.value, Rational(5, 4) - Rational(1, 4 * k));
    EXPECT_NEAR(maximize(h).value, to_double(r.value), 1e-6);
  }
  // The expansion 1.25 + 0.25/k - 0.5/k^2 is not the optimum.
  EXPECT_GT(std::abs((1.25 + 0.25 / 2 - 0.5 / 4) - 1.125), 0.1);
}

TEST(Lagrangian12Exact, AgreesWithGridSearch) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 60; ++i) {
    const int n = 1 + static_cast<int>(rng() % 3);
    auto h = random_12(rng, n, 0.5, 0.5);
    const double exact = to_double(lagrangian12_exact(h).value);
    const double grid = oracle::grid_max(h, 600);
    EXPECT_GE(exact, grid - 1e-12);
    EXPECT_LE(exact, grid + 0.01);
  }
}

TEST(Lagrangian12Exact, WitnessInvariants) {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + static_cast<int>(rng() % 8);
    auto h = random_12(rng, n, 0.3, 0.5);
    auto r = lagrangian12_exact(h);
    EXPECT_NEAR(evaluate(h, r.witness_weighting), to_double(r.value), 1e-12);
    EXPECT_LE(kkt_residual(h, r.witness_weighting), 1e-9);
    EXPECT_GE(to_double(r.value) + 1e-6, maximize(h).value);

    const int t = max_complete_12_order(h);
    if (t >= 2) {
      EXPECT_EQ(r.value, Rational(2) - Rational(1, t));
      EXPECT_EQ(r.case_tag, Exact12Case::AllSingletons);
    }
  }
}

TEST(UniformRelation, Examples) {
  auto [a, b] = uniform_relation_check(complete(3, {2}), Weighting::uniform(3));
  EXPECT_NEAR(a, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(b, 2.0 / 3.0, 1e-15);
  auto [c, d] = uniform_relation_check(Hypergraph(2, {{1, 2}}), Weighting::uniform(2));
  EXPECT_NEAR(c, 0.5, 1e-15);
  EXPECT_NEAR(d, 0.5, 1e-15);
  auto [e, f] = uniform_relation_check(Hypergraph(1, {{1}}), Weighting({1.0}));
  EXPECT_EQ(e, 1.0);
  EXPECT_EQ(f, 1.0);
  EXPECT_THROW(uniform_relation_check(Hypergraph(2, {{1}, {1, 2}}), Weighting::uniform(2)),
               std::invalid_argument);
}
