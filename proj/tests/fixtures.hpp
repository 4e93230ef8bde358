#pragma once

#include <initializer_list>
#include <random>
#include <utility>

#include "fraisse/amalgamation.hpp"
#include "fraisse/structure.hpp"

namespace fixtures {

using fraisse::Element;
using fraisse::Structure;
using fraisse::Vocabulary;

inline Vocabulary graph_vocab() { return Vocabulary({{"E", 2}}, "graph"); }

inline Structure graph(std::size_t n, std::initializer_list<std::pair<Element, Element>> edges) {
  Structure s(graph_vocab(), n);
  for (auto [a, b] : edges) s.set_edge(0, a, b);
  return s;
}

inline Structure triangle() { return graph(3, {{0, 1}, {1, 2}, {0, 2}}); }
/// Path 0 - 1 - 2.
inline Structure path3() { return graph(3, {{0, 1}, {1, 2}}); }
inline Structure edge() { return graph(2, {{0, 1}}); }
inline Structure non_edge() { return graph(2, {}); }
inline Structure point() { return graph(1, {}); }
inline Structure empty() { return graph(0, {}); }

/// P2 of the random graph: empty, point, non-adjacent pair, adjacent pair.
inline fraisse::P2Spec random_graph_p2() {
  return fraisse::P2Spec(graph_vocab(), {empty(), point(), non_edge(), edge()});
}

/// Uniform random loop-free undirected graph.
inline Structure random_graph(std::size_t n, std::mt19937_64& rng) {
  Structure s(graph_vocab(), n);
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b)
      if (rng() & 1) s.set_edge(0, a, b);
  return s;
}

/// All labelled graphs on n vertices, in bitmask order over pairs (a<b).
inline std::vector<Structure> all_graphs(std::size_t n) {
  std::vector<std::pair<Element, Element>> pairs;
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::vector<Structure> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    Structure s(graph_vocab(), n);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if ((mask >> i) & 1) s.set_edge(0, pairs[i].first, pairs[i].second);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace fixtures
