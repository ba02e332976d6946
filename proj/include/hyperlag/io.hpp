#pragma once

#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "hypergraph.hpp"

namespace hyperlag {

// Line format:
//   n <count>          first non-comment line
//   e <v1> ... <vk>    one edge, distinct 1-based labels in any order
// '#' starts a comment that runs to the end of the line.

inline Hypergraph parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  int n = 0;
  std::vector<Edge> edges;
  std::set<Edge> seen;

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag))
      continue;

    if (tag == "n") {
      if (n != 0)
        throw ParseError(lineno, "repeated 'n' line");
      long long count = 0;
      std::string rest;
      if (!(fields >> count) || (fields >> rest))
        throw ParseError(lineno, "expected 'n <count>'");
      if (count < 1 || count > 1'000'000)
        throw ParseError(lineno, "vertex count must be positive");
      n = static_cast<int>(count);
    } else if (tag == "e") {
      if (n == 0)
        throw ParseError(lineno, "edge before 'n' line");
      Edge e;
      std::string tok;
      while (fields >> tok) {
        std::size_t used = 0;
        long long v = 0;
        try {
          v = std::stoll(tok, &used);
        } catch (const std::exception &) {
          throw ParseError(lineno, "bad vertex label '" + tok + "'");
        }
        if (used != tok.size())
          throw ParseError(lineno, "bad vertex label '" + tok + "'");
        if (v < 1 || v > n)
          throw ParseError(lineno, "vertex " + tok + " out of range 1.." + std::to_string(n));
        e.push_back(static_cast<Vertex>(v));
      }
      if (e.empty())
        throw ParseError(lineno, "edge with no vertices");
      std::sort(e.begin(), e.end());
      if (std::adjacent_find(e.begin(), e.end()) != e.end())
        throw ParseError(lineno, "repeated vertex in edge");
      if (!seen.insert(e).second)
        throw ParseError(lineno, "duplicate edge");
      edges.push_back(std::move(e));
    } else {
      throw ParseError(lineno, "unknown line tag '" + tag + "'");
    }
  }
  if (n == 0)
    throw ParseError(lineno == 0 ? 1 : lineno, "missing 'n <count>' line");
  return Hypergraph(n, std::move(edges));
}

/// Edges come out in canonical (size, lexicographic) order.
inline std::string serialize(const Hypergraph &h) {
  std::string out = "n " + std::to_string(h.order()) + "\n";
  for (const auto &e : h.edges()) {
    out += 'e';
    for (Vertex v : e) {
      out += ' ';
      out += std::to_string(v);
    }
    out += '\n';
  }
  return out;
}

inline std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Hypergraph load(const std::string &path) { return parse(read_file(path)); }

inline void save(const Hypergraph &h, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  out << serialize(h);
}

} // namespace hyperlag
