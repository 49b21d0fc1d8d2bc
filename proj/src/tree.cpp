#include "lassopaths/tree.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace lassopaths {

RootedTree RootedTree::build(Vertex root, std::vector<TreeEdge> edges) {
  RootedTree t;
  t.root_ = root;
  t.edges_ = std::move(edges);

  std::map<Vertex, std::vector<std::pair<Vertex, int>>> adj;
  adj[root];
  for (int j = 0; j < static_cast<int>(t.edges_.size()); ++j) {
    const TreeEdge& e = t.edges_[j];
    if (e.tail == e.head) throw NotATreeError("self-loop in tree edges");
    adj[e.tail].push_back({e.head, j});
    adj[e.head].push_back({e.tail, j});
  }
  if (adj.size() != t.edges_.size() + 1)
    throw NotATreeError("edge count does not match vertex count");

  t.vertices_.push_back(root);
  for (const auto& [v, nb] : adj)
    if (v != root) t.vertices_.push_back(v);  // map iteration is ascending

  std::map<Vertex, int> pos;
  for (int i = 0; i < static_cast<int>(t.vertices_.size()); ++i)
    pos[t.vertices_[i]] = i;

  const int nv = static_cast<int>(t.vertices_.size());
  t.parent_.assign(nv, -1);
  t.parent_edge_.assign(nv, -1);
  t.depth_.assign(nv, 0.0);
  t.parent_[0] = root;

  std::vector<char> seen(nv, 0);
  std::queue<Vertex> q;
  q.push(root);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    for (auto [v, j] : adj[u]) {
      const int pv = pos[v];
      if (seen[pv]) continue;
      seen[pv] = 1;
      ++reached;
      t.parent_[pv] = u;
      t.parent_edge_[pv] = j;
      t.depth_[pv] = t.depth_[pos[u]] + t.edges_[j].weight;
      q.push(v);
    }
  }
  if (reached != nv) throw NotATreeError("tree edges are not connected");
  return t;
}

int RootedTree::index_of(Vertex v) const {
  if (v == root_) return 0;
  auto it = std::lower_bound(vertices_.begin() + 1, vertices_.end(), v);
  if (it == vertices_.end() || *it != v) throw NotATreeError("vertex not in tree");
  return static_cast<int>(it - vertices_.begin());
}

DenseMatrix tree_path_matrix(const RootedTree& t) {
  const int k = t.edge_count();
  DenseMatrix p(k, k);
  for (int col = 0; col < k; ++col) {
    Vertex v = t.vertices()[col + 1];
    while (v != t.root()) {
      const int j = t.parent_edge(v);
      const TreeEdge& e = t.edges()[j];
      // traversing child -> parent agrees with the orientation iff child is the tail
      p(j, col) = (e.tail == v) ? 1.0 : -1.0;
      v = t.parent(v);
    }
  }
  return p;
}

DenseMatrix tree_incidence_matrix(const RootedTree& t) {
  const int k = t.edge_count();
  DenseMatrix d(k + 1, k);
  for (int j = 0; j < k; ++j) {
    d(t.index_of(t.edges()[j].tail), j) = 1.0;
    d(t.index_of(t.edges()[j].head), j) = -1.0;
  }
  return d;
}

DenseMatrix tree_incidence_pseudoinverse(const RootedTree& t) {
  const int k = t.edge_count();
  const double n = static_cast<double>(k + 1);
  const DenseMatrix p = tree_path_matrix(t);
  Vec rowsum(k, 0.0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) rowsum[i] += p(i, j);

  DenseMatrix pinv(k, k + 1);
  for (int i = 0; i < k; ++i) {
    pinv(i, 0) = -rowsum[i] / n;
    for (int j = 0; j < k; ++j) pinv(i, j + 1) = p(i, j) - rowsum[i] / n;
  }
  return pinv;
}

}  // namespace lassopaths
