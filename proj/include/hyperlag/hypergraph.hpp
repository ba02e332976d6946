#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperlag {

/// Vertex labels are 1-based.
using Vertex = int;

/// An edge is a strictly increasing list of vertex labels.
using Edge = std::vector<Vertex>;

/// Canonical edge order: by size, then lexicographically.
struct EdgeOrder {
  bool operator()(const Edge &a, const Edge &b) const {
    if (a.size() != b.size())
      return a.size() < b.size();
    return a < b;
  }
};

/// A non-uniform hypergraph on vertices 1..n with a set of nonempty edges.
/// Immutable after construction; edges are kept sorted in EdgeOrder.
class Hypergraph {
public:
  explicit Hypergraph(int n) : n_(n) {
    if (n < 1)
      throw std::invalid_argument("hypergraph needs at least one vertex");
  }

  Hypergraph(int n, std::vector<Edge> edges) : Hypergraph(n) {
    for (auto &e : edges) {
      std::sort(e.begin(), e.end());
      check_edge(e);
    }
    std::sort(edges.begin(), edges.end(), EdgeOrder{});
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw std::invalid_argument("duplicate edge");
    edges_ = std::move(edges);
  }

  int order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }
  const std::vector<Edge> &edges() const noexcept { return edges_; }

  bool has_edge(Edge e) const {
    std::sort(e.begin(), e.end());
    return std::binary_search(edges_.begin(), edges_.end(), e, EdgeOrder{});
  }

  /// R(H): the set of edge cardinalities.
  std::set<int> edge_types() const {
    std::set<int> r;
    for (const auto &e : edges_)
      r.insert(static_cast<int>(e.size()));
    return r;
  }

  int degree(Vertex v) const {
    int d = 0;
    for (const auto &e : edges_)
      d += std::binary_search(e.begin(), e.end(), v) ? 1 : 0;
    return d;
  }

  Hypergraph with_edge(Edge e) const {
    std::sort(e.begin(), e.end());
    check_edge(e);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e, EdgeOrder{});
    if (it != edges_.end() && *it == e)
      throw std::invalid_argument("duplicate edge");
    Hypergraph h(n_);
    h.edges_ = edges_;
    h.edges_.insert(h.edges_.begin() + (it - edges_.begin()), std::move(e));
    return h;
  }

  friend bool operator==(const Hypergraph &a, const Hypergraph &b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

private:
  void check_edge(const Edge &e) const {
    if (e.empty())
      throw std::invalid_argument("empty edge");
    if (e.front() < 1 || e.back() > n_)
      throw std::invalid_argument("vertex out of range 1.." + std::to_string(n_));
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw std::invalid_argument("repeated vertex in edge");
  }

  int n_;
  std::vector<Edge> edges_;
};

/// The size-k edges of a hypergraph, on the same vertex set.
struct LevelGraph {
  int k;
  Hypergraph graph;
};

/// Vertex-class sizes for a blowup; every multiplicity is at least 1.
class BlowupSpec {
public:
  explicit BlowupSpec(std::vector<int> multiplicities) : s_(std::move(multiplicities)) {
    for (int s : s_)
      if (s < 1)
        throw std::invalid_argument("blowup multiplicities must be >= 1");
  }

  static BlowupSpec uniform(int n, int s) { return BlowupSpec(std::vector<int>(n, s)); }

  const std::vector<int> &multiplicities() const noexcept { return s_; }
  std::size_t size() const noexcept { return s_.size(); }

private:
  std::vector<int> s_;
};

inline std::set<int> edge_types(const Hypergraph &h) { return h.edge_types(); }

inline LevelGraph level(const Hypergraph &h, int k) {
  if (k < 1)
    throw std::invalid_argument("level index must be >= 1");
  std::vector<Edge> kept;
  for (const auto &e : h.edges())
    if (static_cast<int>(e.size()) == k)
      kept.push_back(e);
  return {k, Hypergraph(h.order(), std::move(kept))};
}

/// The common edge size, if the hypergraph has at most one edge type.
/// Edgeless graphs report no size.
inline std::optional<int> uniform_size(const Hypergraph &h) {
  auto r = h.edge_types();
  if (r.size() != 1)
    return std::nullopt;
  return *r.begin();
}

inline bool is_12_graph(const Hypergraph &h) {
  for (const auto &e : h.edges())
    if (e.size() > 2)
      return false;
  return true;
}

/// Calls f on every r-subset of {1..n}, in lexicographic order.
inline void for_each_combination(int n, int r, const std::function<void(const Edge &)> &f) {
  if (r < 0 || r > n)
    return;
  Edge c(r);
  for (int i = 0; i < r; ++i)
    c[i] = i + 1;
  while (true) {
    f(c);
    int i = r - 1;
    while (i >= 0 && c[i] == n - r + i + 1)
      --i;
    if (i < 0)
      return;
    ++c[i];
    for (int j = i + 1; j < r; ++j)
      c[j] = c[j - 1] + 1;
  }
}

/// K_n^R: every i-subset of {1..n} for i in R.
inline Hypergraph complete(int n, const std::set<int> &types) {
  std::vector<Edge> edges;
  for (int r : types) {
    if (r < 1 || r > n)
      throw std::invalid_argument("edge type " + std::to_string(r) + " not in 1.." +
                                  std::to_string(n));
    for_each_combination(n, r, [&](const Edge &c) { edges.push_back(c); });
  }
  return Hypergraph(n, std::move(edges));
}

/// Replaces vertex i by the label range [1 + s_1 + ... + s_{i-1}, s_1 + ... + s_i];
/// each edge becomes all of its transversals.
inline Hypergraph blowup(const Hypergraph &h, const BlowupSpec &spec) {
  const auto &s = spec.multiplicities();
  if (static_cast<int>(s.size()) != h.order())
    throw std::invalid_argument("blowup multiplicity count differs from vertex count");
  std::vector<int> offset(s.size() + 1, 0);
  for (std::size_t i = 0; i < s.size(); ++i)
    offset[i + 1] = offset[i] + s[i];

  std::vector<Edge> edges;
  for (const auto &e : h.edges()) {
    std::vector<int> pick(e.size(), 0);
    for (;;) {
      Edge image(e.size());
      for (std::size_t j = 0; j < e.size(); ++j)
        image[j] = offset[e[j] - 1] + pick[j] + 1;
      edges.push_back(std::move(image));
      std::size_t j = e.size();
      while (j > 0 && ++pick[j - 1] == s[e[j - 1] - 1]) {
        pick[j - 1] = 0;
        --j;
      }
      if (j == 0)
        break;
    }
  }
  return Hypergraph(offset.back(), std::move(edges));
}

inline Hypergraph remove_edge(const Hypergraph &h, Edge e) {
  std::sort(e.begin(), e.end());
  std::vector<Edge> kept;
  kept.reserve(h.size());
  bool found = false;
  for (const auto &f : h.edges()) {
    if (f == e)
      found = true;
    else
      kept.push_back(f);
  }
  if (!found)
    throw std::invalid_argument("edge not present");
  return Hypergraph(h.order(), std::move(kept));
}

/// Deletes vertex v and every edge through it; labels above v shift down by one.
inline Hypergraph remove_vertex(const Hypergraph &h, Vertex v) {
  if (v < 1 || v > h.order())
    throw std::invalid_argument("vertex out of range");
  if (h.order() == 1)
    throw std::invalid_argument("cannot remove the only vertex");
  std::vector<Edge> kept;
  for (const auto &e : h.edges()) {
    if (std::binary_search(e.begin(), e.end(), v))
      continue;
    Edge f = e;
    for (auto &u : f)
      if (u > v)
        --u;
    kept.push_back(std::move(f));
  }
  return Hypergraph(h.order() - 1, std::move(kept));
}

/// Disjoint union: g's labels are shifted past h's.
inline Hypergraph disjoint_union(const Hypergraph &h, const Hypergraph &g) {
  std::vector<Edge> edges = h.edges();
  for (auto e : g.edges()) {
    for (auto &v : e)
      v += h.order();
    edges.push_back(std::move(e));
  }
  return Hypergraph(h.order() + g.order(), std::move(edges));
}

namespace detail {

/// Backtracking search for a map V(F) -> V(G) that sends every edge of F
/// injectively onto an edge of G of the same size. With `injective` the map
/// must also be injective on all of V(F) (subgraph embedding).
class EdgeMapSearch {
public:
  EdgeMapSearch(const Hypergraph &f, const Hypergraph &g, bool injective)
      : f_(f), g_(g), injective_(injective), incident_(f.order() + 1),
        image_(f.order() + 1, 0), used_(g.order() + 1, 0) {
    for (std::size_t i = 0; i < f.edges().size(); ++i)
      for (Vertex v : f.edges()[i])
        incident_[v].push_back(i);
    for (Vertex v = 1; v <= f.order(); ++v)
      order_.push_back(v);
    std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) {
      return incident_[a].size() > incident_[b].size();
    });
    for (const auto &e : g.edges())
      add_partials(e);
  }

  std::optional<std::vector<Vertex>> run() {
    if (injective_ && f_.order() > g_.order())
      return std::nullopt;
    if (!extend(0))
      return std::nullopt;
    return std::vector<Vertex>(image_.begin() + 1, image_.end());
  }

private:
  // Every nonempty subset of a G edge, tagged with the edge's size, is a
  // feasible partial image for an F edge of that size.
  void add_partials(const Edge &e) {
    const std::size_t k = e.size();
    if (k > 16) {
      partials_.insert(tagged(e, k));
      return;
    }
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      Edge sub;
      for (std::size_t j = 0; j < k; ++j)
        if (mask & (1u << j))
          sub.push_back(e[j]);
      partials_.insert(tagged(sub, k));
    }
  }

  static Edge tagged(Edge sub, std::size_t k) {
    sub.insert(sub.begin(), static_cast<Vertex>(k));
    return sub;
  }

  bool consistent(Vertex u) const {
    for (std::size_t idx : incident_[u]) {
      const Edge &e = f_.edges()[idx];
      Edge img;
      bool complete = true;
      for (Vertex v : e) {
        if (image_[v] == 0)
          complete = false;
        else
          img.push_back(image_[v]);
      }
      std::sort(img.begin(), img.end());
      if (std::adjacent_find(img.begin(), img.end()) != img.end())
        return false;
      if (complete && e.size() > 16) {
        if (!g_.has_edge(img))
          return false;
      } else if (!partials_.count(tagged(img, e.size()))) {
        return false;
      }
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size())
      return true;
    const Vertex u = order_[depth];
    for (Vertex w = 1; w <= g_.order(); ++w) {
      if (injective_ && used_[w])
        continue;
      image_[u] = w;
      if (consistent(u)) {
        used_[w] = 1;
        if (extend(depth + 1))
          return true;
        used_[w] = 0;
      }
      image_[u] = 0;
    }
    return false;
  }

  const Hypergraph &f_;
  const Hypergraph &g_;
  bool injective_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<Vertex> order_;
  std::vector<Vertex> image_;
  std::vector<char> used_;
  std::set<Edge> partials_;
};

} // namespace detail

/// Non-induced containment: an injective vertex map sending edges of F to edges of G.
inline bool is_subgraph(const Hypergraph &f, const Hypergraph &g) {
  return detail::EdgeMapSearch(f, g, true).run().has_value();
}

} // namespace hyperlag
