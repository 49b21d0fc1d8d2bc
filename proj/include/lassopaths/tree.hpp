#pragma once

#include <vector>

#include "lassopaths/dense.hpp"
#include "lassopaths/graph.hpp"

namespace lassopaths {

struct TreeEdge {
  Vertex tail;
  Vertex head;
  double weight = 1.0;
};

/// A rooted tree over an arbitrary vertex subset. Vertex order is canonical:
/// root first, then the remaining members ascending; matrices index by it.
class RootedTree {
 public:
  static RootedTree build(Vertex root, std::vector<TreeEdge> edges);

  Vertex root() const { return root_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }

  const std::vector<TreeEdge>& edges() const { return edges_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }

  /// Position of v in the canonical order (root = 0).
  int index_of(Vertex v) const;

  Vertex parent(Vertex v) const { return parent_[index_of(v)]; }
  int parent_edge(Vertex v) const { return parent_edge_[index_of(v)]; }

  /// Distance from v to the root along tree edges.
  double depth(Vertex v) const { return depth_[index_of(v)]; }

 private:
  Vertex root_ = 0;
  std::vector<TreeEdge> edges_;
  std::vector<Vertex> vertices_;
  std::vector<Vertex> parent_;      // by canonical index; root maps to itself
  std::vector<int> parent_edge_;    // edge index into edges_; -1 for the root
  std::vector<double> depth_;
};

/// k x k matrix whose column for each non-root vertex is the incidence vector
/// of its path to the root (rows follow the tree edge order).
DenseMatrix tree_path_matrix(const RootedTree& t);

/// (k+1) x k incidence matrix of the tree in canonical vertex order.
DenseMatrix tree_incidence_matrix(const RootedTree& t);

/// Pseudo-inverse of the tree incidence matrix, k x (k+1), assembled from the
/// path matrix: [-P 1 / N | P (I - 1 1^T / N)] with N = k+1.
DenseMatrix tree_incidence_pseudoinverse(const RootedTree& t);

}  // namespace lassopaths
