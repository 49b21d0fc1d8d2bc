#pragma once

#include <optional>
#include <vector>

#include "lassopaths/graph.hpp"

namespace lassopaths {

struct DistanceMap {
  Vec dist;                        // +inf for unreached vertices
  std::vector<int> parent_edge;    // -1 at the source and unreached vertices
  std::vector<Vertex> parent;      // -1 likewise
  std::vector<Vertex> settle_order;
};

/// Binary-heap Dijkstra with lazy deletion. If target is given, stops once the
/// target is settled. Equal-distance pops break ties on the smaller vertex id.
DistanceMap dijkstra(const Graph& g, Vertex source,
                     std::optional<Vertex> target = std::nullopt);

PathResult shortest_path(const Graph& g, Vertex s, Vertex t);

struct SettleEvent {
  Vertex vertex;
  Vertex root;     // s or t
  double dist;     // distance to its root
  double key;      // tree-growth key the event was ranked by
};

/// Merged settle sequence of two independent Dijkstra runs rooted at s and t,
/// ordered by the tree-growth key 1 / (|T| * l_v - sum_{u in T} l_u) of the
/// regularization path, descending. Vertices with keys tied within 1e-9 are
/// emitted together (smaller id first). The sequence stops where the two grown
/// trees would connect, so it predicts the active-set growth of lars_path.
std::vector<SettleEvent> bidirectional_settle_order(const Graph& g, Vertex s, Vertex t);

struct UniquenessReport {
  bool satisfied = true;
  std::vector<Vertex> violations;  // vertices with two equal-length optimal routes
};

/// True iff the shortest path from both s and t to every vertex is unique.
/// Two candidate distances count as equal within 1e-12 relative tolerance.
UniquenessReport check_assumption_a1(const Graph& g, Vertex s, Vertex t);

}  // namespace lassopaths
