#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "hypergraph.hpp"
#include "lagrangian.hpp"
#include "rational.hpp"

namespace hyperlag {

struct CliqueResult {
  std::size_t size = 0;
  std::vector<Vertex> witness; ///< sorted, pairwise adjacent
};

namespace detail {

using Adjacency = std::vector<std::vector<char>>;

/// 0-based adjacency of the pair edges; larger edges are ignored.
inline Adjacency pair_adjacency(const Hypergraph &h) {
  Adjacency adj(h.order(), std::vector<char>(h.order(), 0));
  for (const auto &e : h.edges())
    if (e.size() == 2)
      adj[e[0] - 1][e[1] - 1] = adj[e[1] - 1][e[0] - 1] = 1;
  return adj;
}

/// Branch and bound with a greedy-colouring bound. Candidates are explored in
/// ascending order and the incumbent is replaced only on strict improvement,
/// so the result is the lexicographically smallest maximum clique.
class CliqueSearch {
public:
  explicit CliqueSearch(const Adjacency &adj) : adj_(adj) {}

  /// Maximum clique within `candidates` (0-based, ascending).
  std::vector<int> solve(std::vector<int> candidates) {
    best_.clear();
    current_.clear();
    expand(candidates);
    return best_;
  }

private:
  int colour_bound(const std::vector<int> &cand) const {
    std::vector<std::vector<int>> classes;
    for (int v : cand) {
      bool placed = false;
      for (auto &cls : classes) {
        bool clash = false;
        for (int u : cls)
          if (adj_[u][v]) {
            clash = true;
            break;
          }
        if (!clash) {
          cls.push_back(v);
          placed = true;
          break;
        }
      }
      if (!placed)
        classes.push_back({v});
    }
    return static_cast<int>(classes.size());
  }

  void expand(const std::vector<int> &cand) {
    if (current_.size() > best_.size())
      best_ = current_;
    if (cand.empty())
      return;
    if (current_.size() + colour_bound(cand) <= best_.size())
      return;
    for (std::size_t idx = 0; idx < cand.size(); ++idx) {
      if (current_.size() + (cand.size() - idx) <= best_.size())
        return;
      const int v = cand[idx];
      std::vector<int> next;
      for (std::size_t j = idx + 1; j < cand.size(); ++j)
        if (adj_[v][cand[j]])
          next.push_back(cand[j]);
      current_.push_back(v);
      expand(next);
      current_.pop_back();
    }
  }

  const Adjacency &adj_;
  std::vector<int> current_;
  std::vector<int> best_;
};

inline std::vector<Vertex> to_labels(const std::vector<int> &zero_based) {
  std::vector<Vertex> out;
  for (int v : zero_based)
    out.push_back(v + 1);
  return out;
}

inline void require_12(const Hypergraph &h) {
  if (!is_12_graph(h))
    throw std::invalid_argument("expected a {1,2}-graph");
}

} // namespace detail

/// Exact maximum clique of a 2-uniform graph. A lone vertex is a clique of order 1.
inline CliqueResult max_clique(const Hypergraph &g) {
  for (const auto &e : g.edges())
    if (e.size() != 2)
      throw std::invalid_argument("max_clique expects a 2-uniform graph");
  auto adj = detail::pair_adjacency(g);
  std::vector<int> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  auto best = detail::CliqueSearch(adj).solve(all);
  return {best.size(), detail::to_labels(best)};
}

/// lambda(G) = (1 - 1/l)/2 where l is the clique number; 0 for an edgeless graph.
inline Rational motzkin_straus_value(const Hypergraph &g) {
  const auto l = static_cast<std::int64_t>(max_clique(g).size);
  if (g.empty())
    return Rational(0);
  return Rational(1, 2) * (Rational(1) - Rational(1, l));
}

namespace detail {

inline std::vector<char> singleton_mask(const Hypergraph &h) {
  std::vector<char> has(h.order(), 0);
  for (const auto &e : h.edges())
    if (e.size() == 1)
      has[e[0] - 1] = 1;
  return has;
}

/// Largest complete {1,2}-subgraph: max clique of H^2 among singleton vertices.
inline std::vector<int> max_complete_12(const Hypergraph &h) {
  require_12(h);
  auto has = singleton_mask(h);
  std::vector<int> cand;
  for (int v = 0; v < h.order(); ++v)
    if (has[v])
      cand.push_back(v);
  if (cand.empty())
    return {};
  auto adj = pair_adjacency(h);
  return CliqueSearch(adj).solve(cand);
}

} // namespace detail

/// Order t of the largest S with every {v} and every pair of S present; 0 when H^1 is empty.
inline int max_complete_12_order(const Hypergraph &h) {
  return static_cast<int>(detail::max_complete_12(h).size());
}

enum class Exact12Case { Empty, SingleVertex, AllSingletons, NoSingletons, OneHeavySingleton };

inline std::string_view to_string(Exact12Case c) {
  switch (c) {
  case Exact12Case::Empty:
    return "empty";
  case Exact12Case::SingleVertex:
    return "single-vertex";
  case Exact12Case::AllSingletons:
    return "all-singletons";
  case Exact12Case::NoSingletons:
    return "no-singletons";
  case Exact12Case::OneHeavySingleton:
    return "one-heavy-singleton";
  }
  return "unknown";
}

struct Exact12Result {
  Rational value;
  Weighting witness_weighting;
  Exact12Case case_tag;
  std::vector<Vertex> support; ///< vertices carrying positive witness weight
};

/// Exact lambda' of a {1,2}-graph.
///
/// An optimal weighting with minimal support has its support on a clique of
/// H^2 (any uncovered pair can be merged without loss), its partial derivatives
/// equal on the support, and among the k support vertices the number l holding
/// a singleton is 0, 1 or k. The three stationary values are
///
///   l = k:  2 - 1/k          (complete {1,2}-graph, uniform weights)
///   l = 0:  1 - 1/k          (clique, uniform weights)
///   l = 1:  5/4 - 1/(4k)     (heavy weight 1/2 + 1/(2k), the rest 1/(2k))
///
/// each increasing in k, so the optimum is the best of the three evaluated at
/// the largest admissible clique.
inline Exact12Result lagrangian12_exact(const Hypergraph &h) {
  detail::require_12(h);
  const int n = h.order();
  if (h.empty())
    return {Rational(0), Weighting::uniform(n), Exact12Case::Empty, {}};

  auto adj = detail::pair_adjacency(h);
  auto has = detail::singleton_mask(h);
  detail::CliqueSearch search(adj);

  struct Candidate {
    Rational value;
    std::vector<double> x;
    Exact12Case tag;
  };
  std::optional<Candidate> best;
  auto offer = [&](Candidate c) {
    if (!best || c.value > best->value)
      best = std::move(c);
  };

  // (a) complete {1,2}-subgraph of order t >= 1
  if (auto s = detail::max_complete_12(h); !s.empty()) {
    const auto t = static_cast<std::int64_t>(s.size());
    std::vector<double> x(n, 0.0);
    for (int v : s)
      x[v] = 1.0 / static_cast<double>(t);
    offer({Rational(2) - Rational(1, t), std::move(x),
           t >= 2 ? Exact12Case::AllSingletons : Exact12Case::SingleVertex});
  }

  // (c) clique of H^2 through exactly one weighted singleton
  {
    std::vector<int> heavy_clique;
    int heavy = -1;
    for (int v = 0; v < n; ++v) {
      if (!has[v])
        continue;
      std::vector<int> nbrs;
      for (int u = 0; u < n; ++u)
        if (adj[v][u])
          nbrs.push_back(u);
      auto c = search.solve(nbrs);
      if (c.size() + 1 > heavy_clique.size()) {
        c.push_back(v);
        std::sort(c.begin(), c.end());
        heavy_clique = std::move(c);
        heavy = v;
      }
    }
    if (heavy_clique.size() >= 2) {
      const auto k = static_cast<std::int64_t>(heavy_clique.size());
      std::vector<double> x(n, 0.0);
      for (int v : heavy_clique)
        x[v] = 1.0 / (2.0 * static_cast<double>(k));
      x[heavy] = 0.5 + 1.0 / (2.0 * static_cast<double>(k));
      offer({Rational(5, 4) - Rational(1, 4 * k), std::move(x), Exact12Case::OneHeavySingleton});
    }
  }

  // (b) clique of H^2 alone
  {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    auto c = search.solve(all);
    if (c.size() >= 2) {
      const auto w = static_cast<std::int64_t>(c.size());
      std::vector<double> x(n, 0.0);
      for (int v : c)
        x[v] = 1.0 / static_cast<double>(w);
      offer({Rational(1) - Rational(1, w), std::move(x), Exact12Case::NoSingletons});
    }
  }

  Weighting w(std::move(best->x));
  auto support = w.support(0.0);
  return {best->value, std::move(w), best->tag, std::move(support)};
}

/// (lambda'(G, x), k! * lambda(G, x)) for a k-uniform G; the two agree.
inline std::pair<double, double> uniform_relation_check(const Hypergraph &g,
                                                        std::span<const double> x) {
  if (g.empty()) {
    detail::check_dimension(g, x);
    return {0.0, 0.0};
  }
  auto k = uniform_size(g);
  if (!k)
    throw std::invalid_argument("uniform_relation_check expects a uniform hypergraph");
  const double scaled =
      static_cast<double>(factorial(*k)) * evaluate_uniform(LevelGraph{*k, g}, x);
  return {evaluate(g, x), scaled};
}

} // namespace hyperlag
