#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "closed_form.hpp"
#include "errors.hpp"
#include "homomorphism.hpp"
#include "hypergraph.hpp"
#include "io.hpp"
#include "rational.hpp"

namespace hyperlag {

/// Lubell function h_n(G) = sum_k |E(G^k)| / C(n, k).
inline Rational lubell(const Hypergraph &g) {
  std::map<int, std::int64_t> count;
  for (const auto &e : g.edges())
    ++count[static_cast<int>(e.size())];
  Rational h(0);
  for (auto [k, c] : count)
    h += Rational(c, binomial(g.order(), k));
  return h;
}

namespace detail {

inline bool colourable(const Adjacency &adj, const std::vector<int> &order, int k,
                       std::vector<int> &colour, std::size_t depth, int used) {
  if (depth == order.size())
    return true;
  const int v = order[depth];
  for (int c = 0; c < std::min(k, used + 1); ++c) {
    bool ok = true;
    for (std::size_t d = 0; d < depth; ++d)
      if (adj[v][order[d]] && colour[order[d]] == c) {
        ok = false;
        break;
      }
    if (!ok)
      continue;
    colour[v] = c;
    if (colourable(adj, order, k, colour, depth + 1, std::max(used, c + 1)))
      return true;
  }
  colour[v] = -1;
  return false;
}

} // namespace detail

/// Exact chromatic number of a 2-uniform graph. Starts from the clique number
/// and tries each k up to the greedy colouring count.
inline int chromatic_number(const Hypergraph &g) {
  const auto omega = static_cast<int>(max_clique(g).size);
  const auto adj = detail::pair_adjacency(g);
  const int n = g.order();

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> deg(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u)
      deg[v] += adj[v][u];
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deg[a] > deg[b]; });

  std::vector<int> colour(n, -1);
  int greedy = 0;
  for (int v : order) {
    std::vector<char> taken(n + 1, 0);
    for (int u = 0; u < n; ++u)
      if (adj[v][u] && colour[u] >= 0)
        taken[colour[u]] = 1;
    int c = 0;
    while (taken[c])
      ++c;
    colour[v] = c;
    greedy = std::max(greedy, c + 1);
  }

  for (int k = omega; k < greedy; ++k) {
    std::fill(colour.begin(), colour.end(), -1);
    if (detail::colourable(adj, order, k, colour, 0, 0))
      return k;
  }
  return greedy;
}

/// 2 - 1/(chi(H^2) - 1) for a {1,2}-graph (both edge types present) whose
/// pair level is not bipartite.
inline Rational turan_density_12(const Hypergraph &h) {
  if (!is_12_graph(h))
    throw std::invalid_argument("expected a {1,2}-graph");
  if (level(h, 1).graph.empty())
    throw HypothesisError("H1 empty: Theorem hypothesis violated");
  auto pairs = level(h, 2).graph;
  if (pairs.empty())
    throw HypothesisError("H2 empty: Theorem hypothesis violated");
  const int chi = chromatic_number(pairs);
  if (chi <= 2)
    throw HypothesisError("H2 bipartite: Theorem hypothesis violated");
  return Rational(2) - Rational(1, chi - 1);
}

/// Whether turan_density_12 is defined for h.
inline bool turan12_applies(const Hypergraph &h) {
  if (!is_12_graph(h) || level(h, 1).graph.empty())
    return false;
  auto pairs = level(h, 2).graph;
  return !pairs.empty() && chromatic_number(pairs) >= 3;
}

enum class HostMode { Free, HomFree };
enum class SearchKind { Exhaustive, Local };

inline std::string_view to_string(HostMode m) { return m == HostMode::Free ? "free" : "hom-free"; }
inline std::string_view to_string(SearchKind s) {
  return s == SearchKind::Exhaustive ? "exhaustive" : "local";
}

inline std::optional<HostMode> parse_mode(std::string_view s) {
  if (s == "free")
    return HostMode::Free;
  if (s == "hom-free")
    return HostMode::HomFree;
  return std::nullopt;
}

inline std::optional<SearchKind> parse_search(std::string_view s) {
  if (s == "exhaustive")
    return SearchKind::Exhaustive;
  if (s == "local")
    return SearchKind::Local;
  return std::nullopt;
}

struct ExtremalRecord {
  Hypergraph forbidden;
  int n;
  HostMode mode;
  SearchKind search;
  Rational max_lubell;
  Hypergraph witness;
  std::uint64_t seed = 0;
};

struct ExtremalOptions {
  std::uint64_t seed = 0;
  /// Exhaustive search is refused above this many candidate edges.
  int edge_budget = 22;
  unsigned jobs = 0; ///< 0: hardware concurrency
  int local_restarts = 8;
  int local_rounds = 200;
};

/// Whether `host` avoids F in the given sense.
inline bool host_ok(const Hypergraph &host, const Hypergraph &f, HostMode mode) {
  return mode == HostMode::Free ? !is_subgraph(f, host) : is_hom_free(host, f);
}

namespace detail {

/// Candidate edges of K_n^R in canonical order.
inline std::vector<Edge> candidate_edges(int n, const std::set<int> &types) {
  std::vector<Edge> out;
  for (int r : types)
    if (r <= n)
      for_each_combination(n, r, [&](const Edge &c) { out.push_back(c); });
  return out;
}

/// Every image of F in K_n^R, as a bitmask over the candidate edges. Free mode
/// takes injective maps (copies of F); hom-free mode takes every map that is
/// injective on each edge. A host avoids F exactly when it contains none of
/// these masks.
inline std::vector<std::uint64_t> forbidden_patterns(const Hypergraph &f, int n, HostMode mode,
                                                     const std::vector<Edge> &cand) {
  std::map<Edge, int> index;
  for (std::size_t i = 0; i < cand.size(); ++i)
    index.emplace(cand[i], static_cast<int>(i));

  std::vector<std::uint64_t> patterns;
  std::vector<Vertex> image(f.order() + 1, 0);
  std::vector<char> used(n + 1, 0);
  std::vector<std::vector<std::size_t>> closing(f.order() + 1);
  for (std::size_t i = 0; i < f.edges().size(); ++i)
    closing[f.edges()[i].back()].push_back(i);

  std::function<void(Vertex, std::uint64_t)> assign = [&](Vertex v, std::uint64_t mask) {
    if (v > f.order()) {
      patterns.push_back(mask);
      return;
    }
    for (Vertex w = 1; w <= n; ++w) {
      if (mode == HostMode::Free && used[w])
        continue;
      image[v] = w;
      std::uint64_t next = mask;
      bool ok = true;
      for (std::size_t idx : closing[v]) {
        Edge img;
        for (Vertex u : f.edges()[idx])
          img.push_back(image[u]);
        std::sort(img.begin(), img.end());
        if (std::adjacent_find(img.begin(), img.end()) != img.end()) {
          ok = false;
          break;
        }
        next |= std::uint64_t{1} << index.at(img);
      }
      if (!ok)
        continue;
      used[w] = 1;
      assign(v + 1, next);
      used[w] = 0;
    }
  };
  assign(1, 0);
  std::sort(patterns.begin(), patterns.end());
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  return patterns;
}

inline Hypergraph host_from_mask(int n, const std::vector<Edge> &cand, std::uint64_t mask) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (mask >> i & 1)
      edges.push_back(cand[i]);
  return Hypergraph(n, std::move(edges));
}

/// Branch and bound over subsets of the candidate edges, include-first,
/// pruning hosts that contain a forbidden pattern and branches whose
/// optimistic score cannot beat the incumbent.
class HostSearch {
public:
  HostSearch(const std::vector<std::int64_t> &weight, const std::vector<std::uint64_t> &patterns)
      : weight_(weight), by_edge_(weight.size()), suffix_(weight.size() + 1, 0) {
    for (auto p : patterns)
      for (std::size_t i = 0; i < weight.size(); ++i)
        if (p >> i & 1)
          by_edge_[i].push_back(p);
    for (std::size_t i = weight.size(); i-- > 0;)
      suffix_[i] = suffix_[i + 1] + weight[i];
  }

  struct Best {
    std::int64_t score = -1;
    std::uint64_t mask = 0;
  };

  /// Searches hosts whose first `fixed_depth` decisions match `prefix`.
  Best run(std::uint64_t prefix, std::size_t fixed_depth) {
    best_ = {};
    std::uint64_t mask = 0;
    std::int64_t score = 0;
    for (std::size_t i = 0; i < fixed_depth; ++i) {
      if (prefix >> i & 1) {
        mask |= std::uint64_t{1} << i;
        if (blocked(mask, i))
          return best_;
        score += weight_[i];
      }
    }
    dfs(fixed_depth, mask, score);
    return best_;
  }

private:
  bool blocked(std::uint64_t mask, std::size_t edge) const {
    for (auto p : by_edge_[edge])
      if ((p & ~mask) == 0)
        return true;
    return false;
  }

  void dfs(std::size_t i, std::uint64_t mask, std::int64_t score) {
    if (score + suffix_[i] <= best_.score)
      return;
    if (i == weight_.size()) {
      best_ = {score, mask};
      return;
    }
    const std::uint64_t with = mask | std::uint64_t{1} << i;
    if (!blocked(with, i))
      dfs(i + 1, with, score + weight_[i]);
    dfs(i + 1, mask, score);
  }

  const std::vector<std::int64_t> &weight_;
  std::vector<std::vector<std::uint64_t>> by_edge_;
  std::vector<std::int64_t> suffix_;
  Best best_;
};

inline ExtremalRecord exhaustive_search(const Hypergraph &f, int n, HostMode mode,
                                        const ExtremalOptions &opt) {
  const auto types = f.edge_types();
  const auto cand = candidate_edges(n, types);
  if (static_cast<int>(cand.size()) > opt.edge_budget || cand.size() > 64)
    throw ResourceError("exhaustive search over " + std::to_string(cand.size()) +
                        " candidate edges exceeds budget " + std::to_string(opt.edge_budget));

  // Integer scores over the common denominator of the level weights.
  std::int64_t denom = 1;
  for (int r : types)
    if (r <= n)
      denom = std::lcm(denom, binomial(n, r));
  std::vector<std::int64_t> weight;
  for (const auto &e : cand)
    weight.push_back(denom / binomial(n, static_cast<int>(e.size())));

  const auto patterns = forbidden_patterns(f, n, mode, cand);
  const std::size_t depth = std::min<std::size_t>(3, cand.size());
  const std::size_t parts = std::size_t{1} << depth;
  unsigned jobs = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(parts));

  std::vector<HostSearch::Best> results(parts);
  auto worker = [&](unsigned id) {
    HostSearch search(weight, patterns);
    for (std::size_t p = id; p < parts; p += jobs)
      results[p] = search.run(p, depth);
  };
  if (jobs <= 1) {
    worker(0);
  } else {
    std::vector<std::future<void>> pending;
    for (unsigned id = 0; id < jobs; ++id)
      pending.push_back(std::async(std::launch::async, worker, id));
    for (auto &p : pending)
      p.get();
  }

  // Highest score; ties go to the lexicographically smallest serialization.
  std::optional<Hypergraph> witness;
  std::int64_t best = -1;
  std::string best_text;
  for (const auto &r : results) {
    if (r.score < 0 || r.score < best)
      continue;
    auto host = host_from_mask(n, cand, r.mask);
    auto text = serialize(host);
    if (r.score > best || text < best_text) {
      best = r.score;
      best_text = std::move(text);
      witness = std::move(host);
    }
  }
  if (!witness)
    throw HypothesisError("every host on " + std::to_string(n) + " vertices contains F");
  return {f, n, mode, SearchKind::Exhaustive, Rational(best, denom), *witness, opt.seed};
}

/// Seeded hill climbing: greedy fill in random order, then repeatedly drop a
/// couple of edges and refill, keeping any host that is no worse. A lower bound.
inline ExtremalRecord local_search(const Hypergraph &f, int n, HostMode mode,
                                   const ExtremalOptions &opt) {
  const auto cand = candidate_edges(n, f.edge_types());
  std::mt19937_64 rng(opt.seed);

  auto value = [&](const std::vector<char> &in) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (in[i])
        edges.push_back(cand[i]);
    return Hypergraph(n, std::move(edges));
  };
  auto fill = [&](std::vector<char> &in) {
    std::vector<std::size_t> order(cand.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Hypergraph host = value(in);
    for (std::size_t i : order) {
      if (in[i])
        continue;
      auto trial = host.with_edge(cand[i]);
      if (host_ok(trial, f, mode)) {
        in[i] = 1;
        host = std::move(trial);
      }
    }
    return host;
  };

  std::optional<Hypergraph> best;
  Rational best_value(-1);
  for (int r = 0; r < std::max(1, opt.local_restarts); ++r) {
    std::vector<char> in(cand.size(), 0);
    Hypergraph host = fill(in);
    Rational current = lubell(host);
    for (int round = 0; round < opt.local_rounds; ++round) {
      auto trial = in;
      std::vector<std::size_t> present;
      for (std::size_t i = 0; i < cand.size(); ++i)
        if (trial[i])
          present.push_back(i);
      if (present.empty())
        break;
      std::shuffle(present.begin(), present.end(), rng);
      const std::size_t drop = std::min<std::size_t>(present.size(), 1 + rng() % 2);
      for (std::size_t j = 0; j < drop; ++j)
        trial[present[j]] = 0;
      Hypergraph next = fill(trial);
      Rational v = lubell(next);
      if (v >= current) {
        in = std::move(trial);
        host = std::move(next);
        current = v;
      }
    }
    if (current > best_value) {
      best_value = current;
      best = std::move(host);
    }
  }
  if (!host_ok(*best, f, mode))
    throw HypothesisError("every host on " + std::to_string(n) + " vertices contains F");
  return {f, n, mode, SearchKind::Local, best_value, *best, opt.seed};
}

} // namespace detail

/// Largest Lubell value over hosts G inside K_n^{R(F)} that avoid F (as a
/// subgraph, or as a homomorphic image in hom-free mode).
inline ExtremalRecord extremal_search(const Hypergraph &f, int n, HostMode mode, SearchKind search,
                                      const ExtremalOptions &opt = {}) {
  if (f.empty())
    throw std::invalid_argument("forbidden hypergraph needs at least one edge");
  if (n < 1)
    throw std::invalid_argument("host order must be positive");
  return search == SearchKind::Exhaustive ? detail::exhaustive_search(f, n, mode, opt)
                                          : detail::local_search(f, n, mode, opt);
}

struct DensityEstimate {
  std::vector<ExtremalRecord> records;
  std::optional<Rational> formula_value;
};

inline DensityEstimate density_sequence(const Hypergraph &f, const std::vector<int> &ns,
                                        HostMode mode, SearchKind search = SearchKind::Exhaustive,
                                        const ExtremalOptions &opt = {}) {
  if (ns.empty() || !std::is_sorted(ns.begin(), ns.end()) ||
      std::adjacent_find(ns.begin(), ns.end()) != ns.end())
    throw std::invalid_argument("host orders must be nonempty and strictly ascending");
  DensityEstimate est;
  for (int n : ns)
    est.records.push_back(extremal_search(f, n, mode, search, opt));
  if (turan12_applies(f))
    est.formula_value = turan_density_12(f);
  return est;
}

struct DenseReport {
  bool dense = false;
  Rational value;
  std::vector<Vertex> isolated;
  /// lambda' after deleting each edge, in edge order.
  std::vector<std::pair<Edge, Rational>> after_removal;
};

/// Every proper subgraph has strictly smaller lambda'. Since lambda' is
/// monotone under deletion, it suffices to check each one-edge deletion and
/// the deletion of each isolated vertex (which never changes lambda').
inline DenseReport dense_report(const Hypergraph &g) {
  if (!is_12_graph(g))
    throw std::invalid_argument("denseness check supports {1,2}-graphs only");
  DenseReport report;
  report.value = lagrangian12_exact(g).value;
  for (Vertex v = 1; v <= g.order(); ++v)
    if (g.degree(v) == 0)
      report.isolated.push_back(v);
  bool dense = !g.empty() && report.isolated.empty();
  for (const auto &e : g.edges()) {
    auto after = lagrangian12_exact(remove_edge(g, e)).value;
    if (!(after < report.value))
      dense = false;
    report.after_removal.emplace_back(e, after);
  }
  report.dense = dense;
  return report;
}

inline bool is_dense(const Hypergraph &g) { return dense_report(g).dense; }

struct PiLowerResult {
  Rational value;
  Hypergraph witness;
};

/// Best exact lambda' over F-hom-free {1,2}-graphs on at most max_n vertices
/// using only F's edge types. Every such value is a lower bound on pi(F).
inline PiLowerResult pi_lower_via_lagrangian(const Hypergraph &f, int max_n, int edge_budget = 16) {
  if (!is_12_graph(f) || f.empty())
    throw std::invalid_argument("expected a {1,2}-graph with at least one edge");
  std::optional<PiLowerResult> best;
  for (int n = 1; n <= max_n; ++n) {
    const auto cand = detail::candidate_edges(n, f.edge_types());
    if (static_cast<int>(cand.size()) > edge_budget || cand.size() > 63)
      throw ResourceError("enumerating " + std::to_string(cand.size()) +
                          " candidate edges exceeds budget " + std::to_string(edge_budget));
    const auto patterns = detail::forbidden_patterns(f, n, HostMode::HomFree, cand);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cand.size()); ++mask) {
      bool free = true;
      for (auto p : patterns)
        if ((p & ~mask) == 0) {
          free = false;
          break;
        }
      if (!free)
        continue;
      auto host = detail::host_from_mask(n, cand, mask);
      auto v = lagrangian12_exact(host).value;
      if (!best || v > best->value)
        best = PiLowerResult{v, std::move(host)};
    }
  }
  if (!best)
    throw HypothesisError("no F-hom-free host found");
  return *best;
}

} // namespace hyperlag
