#pragma once

#include <optional>
#include <vector>

#include "hypergraph.hpp"

namespace hyperlag {

/// A vertex map V(F) -> V(G); mapping[v - 1] is the image of v.
struct HomWitness {
  std::vector<Vertex> mapping;
};

/// Searches for a homomorphism F -> G. Every edge of F must land on an edge
/// of G of the same size, so the map is injective on each edge (this is what
/// makes hom-existence equivalent to F sitting inside some blowup of G).
inline std::optional<HomWitness> exists_hom(const Hypergraph &f, const Hypergraph &g) {
  auto m = detail::EdgeMapSearch(f, g, false).run();
  if (!m)
    return std::nullopt;
  return HomWitness{std::move(*m)};
}

inline bool is_hom(const Hypergraph &f, const Hypergraph &g, const HomWitness &w) {
  if (static_cast<int>(w.mapping.size()) != f.order())
    return false;
  for (Vertex v : w.mapping)
    if (v < 1 || v > g.order())
      return false;
  for (const auto &e : f.edges()) {
    Edge img;
    for (Vertex v : e)
      img.push_back(w.mapping[v - 1]);
    std::sort(img.begin(), img.end());
    if (std::adjacent_find(img.begin(), img.end()) != img.end() || !g.has_edge(img))
      return false;
  }
  return true;
}

/// True when no homomorphism F -> G exists.
inline bool is_hom_free(const Hypergraph &g, const Hypergraph &f) {
  return !exists_hom(f, g).has_value();
}

/// Smallest s <= |V(F)| with F inside the balanced blowup G(s, ..., s).
/// Preimage classes of a homomorphism never exceed |V(F)|, so no larger s is needed.
inline std::optional<int> blowup_witness(const Hypergraph &f, const Hypergraph &g) {
  for (int s = 1; s <= f.order(); ++s)
    if (is_subgraph(f, blowup(g, BlowupSpec::uniform(g.order(), s))))
      return s;
  return std::nullopt;
}

} // namespace hyperlag
