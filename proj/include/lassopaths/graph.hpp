#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lassopaths/errors.hpp"
#include "lassopaths/sparse.hpp"
#include "lassopaths/vec.hpp"

namespace lassopaths {

using Vertex = int;  // 0-based inside the library; files and the CLI are 1-based

struct Edge {
  Vertex tail;  // smaller endpoint; orientation is fixed at construction
  Vertex head;
  double weight;
};

struct EdgeSpec {
  Vertex u;
  Vertex v;
  double weight;
};

/// Weighted undirected simple connected graph with a fixed edge orientation
/// (tail = smaller vertex id). Immutable after construction.
class Graph {
 public:
  static Graph build(int n, const std::vector<EdgeSpec>& edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const Edge& edge(int j) const { return edges_[j]; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// (neighbor, edge index) pairs of u.
  const std::vector<std::pair<Vertex, int>>& neighbors(Vertex u) const {
    check_vertex(u);
    return adj_[u];
  }

  /// Edge index between u and v, or -1.
  int find_edge(Vertex u, Vertex v) const;

  void check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) throw VertexOutOfRangeError("vertex id out of range");
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<Vertex, int>>> adj_;
};

/// Convenience for 1-based edge lists (the file format); n is the largest id.
Graph build_graph_1based(const std::vector<std::array<double, 3>>& edges);

/// Simple path as an ordered edge sequence with traversal directions.
struct Path {
  Vertex source = 0;
  Vertex target = 0;
  std::vector<int> edge_ids;
  std::vector<int> directions;  // +1 along the edge orientation, -1 against

  std::vector<Vertex> vertex_sequence(const Graph& g) const;
};

struct PathResult {
  Path path;
  double length = 0.0;
  Vec incidence;  // signed +-1/0 vector over edges, D x = y
};

/// Dense vector with +1 at s, -1 at t, zeros elsewhere.
Vec indicator_vector(int n, Vertex s, Vertex t);

/// n x m matrix with +1 at the tail and -1 at the head of each edge column.
SparseMatrix incidence_matrix(const Graph& g);

/// Q = D W^{-1}: the incidence matrix with columns scaled by 1/weight.
SparseMatrix weighted_incidence(const Graph& g);

void validate_path(const Graph& g, const Path& p);
double path_length(const Graph& g, const Path& p);
Vec path_incidence_vector(const Graph& g, const Path& p);

/// Builds a Path s->t from an unordered set of +-1 incidence entries.
/// Fails if the kept edges do not contain a simple s-t walk.
Path path_from_vertex_sequence(const Graph& g, const std::vector<Vertex>& seq);

}  // namespace lassopaths
