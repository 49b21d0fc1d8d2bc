#include "lassopaths/random_graph.hpp"

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

namespace lassopaths {

namespace {

// decode a uniform Pruefer sequence into tree edges (uniform labeled tree)
std::vector<std::pair<int, int>> random_tree(int n, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  if (n <= 1) return edges;
  if (n == 2) {
    edges.push_back({0, 1});
    return edges;
  }
  std::vector<int> seq(n - 2);
  for (int& s : seq) s = static_cast<int>(rng.below(n));

  std::vector<int> degree(n, 1);
  for (int s : seq) degree[s]++;

  int ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int s : seq) {
    edges.push_back({leaf, s});
    if (--degree[s] == 1 && s < ptr) {
      leaf = s;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  // the last two vertices of degree one; leaf is one of them, n-1 the other
  edges.push_back({leaf, n - 1});
  return edges;
}

}  // namespace

Graph gen_random_graph(int n, int m, double w_min, double w_max, std::uint64_t seed) {
  if (n < 1) throw InfeasibleEdgeCountError("need at least one vertex");
  const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
  if (m < n - 1 || m > max_edges)
    throw InfeasibleEdgeCountError("edge count cannot form a connected simple graph");
  if (!(w_min > 0.0) || w_max < w_min)
    throw NonPositiveWeightError("weight interval must be positive");

  Rng rng(seed);
  std::vector<std::pair<int, int>> pairs = random_tree(n, rng);
  std::set<std::pair<int, int>> used;
  for (auto& [u, v] : pairs) {
    if (u > v) std::swap(u, v);
    used.insert({u, v});
  }

  const int extra = m - (n - 1);
  if (extra > 0 && extra > (max_edges - (n - 1)) / 2) {
    // dense request: sample from the explicit non-edge list
    std::vector<std::pair<int, int>> free_pairs;
    free_pairs.reserve(max_edges - (n - 1));
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (!used.count({u, v})) free_pairs.push_back({u, v});
    for (int i = 0; i < extra; ++i) {
      const std::size_t j = i + rng.below(free_pairs.size() - i);
      std::swap(free_pairs[i], free_pairs[j]);
      pairs.push_back(free_pairs[i]);
    }
  } else {
    for (int added = 0; added < extra;) {
      int u = static_cast<int>(rng.below(n));
      int v = static_cast<int>(rng.below(n));
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      if (!used.insert({u, v}).second) continue;
      pairs.push_back({u, v});
      ++added;
    }
  }

  std::vector<EdgeSpec> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs) edges.push_back({u, v, rng.uniform(w_min, w_max)});
  return Graph::build(n, edges);
}

}  // namespace lassopaths
