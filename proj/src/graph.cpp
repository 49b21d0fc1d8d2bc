#include "lassopaths/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace lassopaths {

Graph Graph::build(int n, const std::vector<EdgeSpec>& edges) {
  if (n <= 0) throw VertexOutOfRangeError("graph needs at least one vertex");
  Graph g;
  g.n_ = n;
  g.adj_.resize(n);
  std::set<std::pair<Vertex, Vertex>> seen;
  g.edges_.reserve(edges.size());
  for (const EdgeSpec& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw VertexOutOfRangeError("edge endpoint out of range");
    if (e.u == e.v) throw SelfLoopError("self-loop rejected");
    if (!(e.weight > 0.0))
      throw NonPositiveWeightError("edge weight must be positive");
    const Vertex tail = std::min(e.u, e.v);
    const Vertex head = std::max(e.u, e.v);
    if (!seen.insert({tail, head}).second)
      throw DuplicateEdgeError("duplicate undirected edge");
    const int id = static_cast<int>(g.edges_.size());
    g.edges_.push_back({tail, head, e.weight});
    g.adj_[tail].push_back({head, id});
    g.adj_[head].push_back({tail, id});
  }

  // single traversal to confirm connectivity
  std::vector<char> reached(n, 0);
  std::vector<Vertex> stack{0};
  reached[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (auto [v, id] : g.adj_[u]) {
      if (!reached[v]) {
        reached[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  if (count != n) throw DisconnectedError("graph is not connected");
  return g;
}

Graph build_graph_1based(const std::vector<std::array<double, 3>>& edges) {
  int n = 0;
  for (const auto& e : edges)
    n = std::max({n, static_cast<int>(e[0]), static_cast<int>(e[1])});
  std::vector<EdgeSpec> specs;
  specs.reserve(edges.size());
  for (const auto& e : edges)
    specs.push_back({static_cast<Vertex>(e[0]) - 1, static_cast<Vertex>(e[1]) - 1, e[2]});
  return Graph::build(n, specs);
}

int Graph::find_edge(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  for (auto [w, id] : adj_[u])
    if (w == v) return id;
  return -1;
}

std::vector<Vertex> Path::vertex_sequence(const Graph& g) const {
  std::vector<Vertex> seq{source};
  Vertex cur = source;
  for (std::size_t i = 0; i < edge_ids.size(); ++i) {
    const Edge& e = g.edge(edge_ids[i]);
    cur = directions[i] > 0 ? e.head : e.tail;
    seq.push_back(cur);
  }
  return seq;
}

Vec indicator_vector(int n, Vertex s, Vertex t) {
  if (s < 0 || s >= n || t < 0 || t >= n)
    throw VertexOutOfRangeError("indicator vertex out of range");
  if (s == t) throw VertexOutOfRangeError("indicator needs distinct endpoints");
  Vec y(n, 0.0);
  y[s] = 1.0;
  y[t] = -1.0;
  return y;
}

SparseMatrix incidence_matrix(const Graph& g) {
  std::vector<Triplet> entries;
  entries.reserve(2 * g.edge_count());
  for (int j = 0; j < g.edge_count(); ++j) {
    const Edge& e = g.edge(j);
    entries.push_back({static_cast<std::size_t>(e.tail), static_cast<std::size_t>(j), 1.0});
    entries.push_back({static_cast<std::size_t>(e.head), static_cast<std::size_t>(j), -1.0});
  }
  return SparseMatrix(g.vertex_count(), g.edge_count(), std::move(entries));
}

SparseMatrix weighted_incidence(const Graph& g) {
  std::vector<Triplet> entries;
  entries.reserve(2 * g.edge_count());
  for (int j = 0; j < g.edge_count(); ++j) {
    const Edge& e = g.edge(j);
    const double inv = 1.0 / e.weight;
    entries.push_back({static_cast<std::size_t>(e.tail), static_cast<std::size_t>(j), inv});
    entries.push_back({static_cast<std::size_t>(e.head), static_cast<std::size_t>(j), -inv});
  }
  return SparseMatrix(g.vertex_count(), g.edge_count(), std::move(entries));
}

void validate_path(const Graph& g, const Path& p) {
  g.check_vertex(p.source);
  g.check_vertex(p.target);
  if (p.edge_ids.size() != p.directions.size())
    throw InvalidPathError("edge/direction length mismatch");
  if (p.edge_ids.empty()) {
    if (p.source != p.target)
      throw InvalidPathError("empty path with distinct endpoints");
    return;
  }
  std::vector<char> visited(g.vertex_count(), 0);
  Vertex cur = p.source;
  visited[cur] = 1;
  for (std::size_t i = 0; i < p.edge_ids.size(); ++i) {
    const int id = p.edge_ids[i];
    if (id < 0 || id >= g.edge_count()) throw InvalidPathError("edge id out of range");
    const Edge& e = g.edge(id);
    const int dir = p.directions[i];
    if (dir != 1 && dir != -1) throw InvalidPathError("direction must be +-1");
    const Vertex from = dir > 0 ? e.tail : e.head;
    const Vertex to = dir > 0 ? e.head : e.tail;
    if (from != cur) throw InvalidPathError("consecutive edges do not connect");
    if (visited[to]) throw InvalidPathError("repeated vertex");
    visited[to] = 1;
    cur = to;
  }
  if (cur != p.target) throw InvalidPathError("path does not end at target");
}

double path_length(const Graph& g, const Path& p) {
  validate_path(g, p);
  double len = 0.0;
  for (int id : p.edge_ids) len += g.edge(id).weight;
  return len;
}

Vec path_incidence_vector(const Graph& g, const Path& p) {
  validate_path(g, p);
  Vec x(g.edge_count(), 0.0);
  for (std::size_t i = 0; i < p.edge_ids.size(); ++i)
    x[p.edge_ids[i]] = static_cast<double>(p.directions[i]);
  return x;
}

Path path_from_vertex_sequence(const Graph& g, const std::vector<Vertex>& seq) {
  if (seq.empty()) throw InvalidPathError("empty vertex sequence");
  Path p;
  p.source = seq.front();
  p.target = seq.back();
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const int id = g.find_edge(seq[i], seq[i + 1]);
    if (id < 0) throw InvalidPathError("vertex sequence skips a missing edge");
    p.edge_ids.push_back(id);
    p.directions.push_back(g.edge(id).tail == seq[i] ? 1 : -1);
  }
  validate_path(g, p);
  return p;
}

}  // namespace lassopaths
