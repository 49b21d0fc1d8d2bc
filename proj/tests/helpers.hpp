#pragma once

#include <array>
#include <vector>

#include "lassopaths/graph.hpp"
#include "lassopaths/random_graph.hpp"

namespace helpers {

using lassopaths::Graph;

/// The classic 9-vertex example used throughout the tests.
inline Graph nicholson() {
  return lassopaths::build_graph_1based({{1, 2, 3},
                                         {1, 3, 6},
                                         {1, 4, 7},
                                         {2, 5, 4},
                                         {2, 3, 1},
                                         {3, 6, 2},
                                         {4, 6, 3},
                                         {4, 7, 4},
                                         {5, 8, 1},
                                         {6, 8, 1},
                                         {6, 9, 2},
                                         {7, 9, 5},
                                         {8, 9, 2}});
}

/// Random connected graph with jittered uniform weights; the jitter keeps
/// every shortest path unique with probability one.
inline Graph random_test_graph(int n, int m, std::uint64_t seed) {
  Graph base = lassopaths::gen_random_graph(n, m, 10.0, 20.0, seed);
  lassopaths::Rng jitter(seed * 1000003ULL + 17);
  std::vector<lassopaths::EdgeSpec> edges;
  for (const auto& e : base.edges())
    edges.push_back({e.tail, e.head, e.weight + jitter.uniform(0.0, 1e-3)});
  return Graph::build(n, edges);
}

inline int edge_index_1based(const Graph& g, int u, int v) {
  return g.find_edge(u - 1, v - 1);
}

}  // namespace helpers
