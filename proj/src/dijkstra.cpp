#include "lassopaths/dijkstra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace lassopaths {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct HeapItem {
  double dist;
  Vertex v;
  bool operator>(const HeapItem& o) const {
    if (dist != o.dist) return dist > o.dist;
    return v > o.v;  // deterministic pops
  }
};

}  // namespace

DistanceMap dijkstra(const Graph& g, Vertex source, std::optional<Vertex> target) {
  g.check_vertex(source);
  if (target) g.check_vertex(*target);

  const int n = g.vertex_count();
  DistanceMap dm;
  dm.dist.assign(n, kInf);
  dm.parent_edge.assign(n, -1);
  dm.parent.assign(n, -1);
  dm.dist[source] = 0.0;

  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> heap;
  heap.push({0.0, source});
  std::vector<char> settled(n, 0);

  while (!heap.empty()) {
    const HeapItem top = heap.top();
    heap.pop();
    if (settled[top.v]) continue;  // stale entry
    settled[top.v] = 1;
    dm.settle_order.push_back(top.v);
    if (target && top.v == *target) break;
    for (auto [w, id] : g.neighbors(top.v)) {
      if (settled[w]) continue;
      const double cand = dm.dist[top.v] + g.edge(id).weight;
      if (cand < dm.dist[w]) {
        dm.dist[w] = cand;
        dm.parent[w] = top.v;
        dm.parent_edge[w] = id;
        heap.push({cand, w});
      }
    }
  }
  return dm;
}

PathResult shortest_path(const Graph& g, Vertex s, Vertex t) {
  g.check_vertex(s);
  g.check_vertex(t);
  const DistanceMap dm = dijkstra(g, s, t);

  PathResult res;
  res.path.source = s;
  res.path.target = t;
  res.length = dm.dist[t];
  if (s == t) {
    res.incidence.assign(g.edge_count(), 0.0);
    return res;
  }

  std::vector<int> rev_edges;
  Vertex cur = t;
  while (cur != s) {
    rev_edges.push_back(dm.parent_edge[cur]);
    cur = dm.parent[cur];
  }
  std::reverse(rev_edges.begin(), rev_edges.end());
  cur = s;
  for (int id : rev_edges) {
    const Edge& e = g.edge(id);
    res.path.edge_ids.push_back(id);
    res.path.directions.push_back(e.tail == cur ? 1 : -1);
    cur = (e.tail == cur) ? e.head : e.tail;
  }
  res.incidence = path_incidence_vector(g, res.path);
  return res;
}

std::vector<SettleEvent> bidirectional_settle_order(const Graph& g, Vertex s, Vertex t) {
  g.check_vertex(s);
  g.check_vertex(t);
  const int n = g.vertex_count();
  const Vec ls = dijkstra(g, s).dist;
  const Vec lt = dijkstra(g, t).dist;

  std::vector<SettleEvent> out;
  if (s == t) return out;

  constexpr double kTieTol = 1e-9;
  // 0 = outside, 1 = in the s-tree, 2 = in the t-tree
  std::vector<char> member(n, 0);
  member[s] = 1;
  member[t] = 2;
  double sum_s = 0.0, sum_t = 0.0;
  int size_s = 1, size_t_ = 1;
  int outside = n - 2;

  auto min_outside = [&](const Vec& l) {
    double best = kInf;
    for (int v = 0; v < n; ++v)
      if (!member[v] && l[v] < best) best = l[v];
    return best;
  };

  while (true) {
    const double lmin_s = outside > 0 ? min_outside(ls) : kInf;
    const double lmin_t = outside > 0 ? min_outside(lt) : kInf;
    const double key_s =
        std::isfinite(lmin_s) ? 1.0 / (size_s * lmin_s - sum_s) : 0.0;
    const double key_t =
        std::isfinite(lmin_t) ? 1.0 / (size_t_ * lmin_t - sum_t) : 0.0;

    // best time over edges that would connect the two trees
    double key_conn = 0.0;
    for (const Edge& e : g.edges()) {
      const bool st = member[e.tail] == 1 && member[e.head] == 2;
      const bool ts = member[e.tail] == 2 && member[e.head] == 1;
      if (!st && !ts) continue;
      const Vertex vs = st ? e.tail : e.head;
      const Vertex vt = st ? e.head : e.tail;
      const double through = ls[vs] + e.weight + lt[vt];
      const double gamma =
          size_s * size_t_ * through - size_t_ * sum_s - size_s * sum_t;
      if (gamma > 0.0) key_conn = std::max(key_conn, (size_s + size_t_) / gamma);
    }

    const double lambda = std::max({key_s, key_t, key_conn});
    if (lambda <= 0.0) break;
    const double cutoff = lambda * (1.0 - kTieTol);

    if (key_s >= cutoff) {
      for (int v = 0; v < n; ++v) {
        if (!member[v] && ls[v] <= lmin_s * (1.0 + kTieTol)) {
          member[v] = 1;
          ++size_s;
          sum_s += ls[v];
          --outside;
          out.push_back({v, s, ls[v], key_s});
        }
      }
    }
    if (key_t >= cutoff) {
      for (int v = 0; v < n; ++v) {
        if (!member[v] && lt[v] <= lmin_t * (1.0 + kTieTol)) {
          member[v] = 2;
          ++size_t_;
          sum_t += lt[v];
          --outside;
          out.push_back({v, t, lt[v], key_t});
        }
      }
    }
    if (key_conn >= cutoff) break;  // the trees connect here
  }
  return out;
}

UniquenessReport check_assumption_a1(const Graph& g, Vertex s, Vertex t) {
  g.check_vertex(s);
  g.check_vertex(t);
  UniquenessReport report;
  std::vector<char> flagged(g.vertex_count(), 0);
  for (Vertex root : {s, t}) {
    const DistanceMap dm = dijkstra(g, root);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (v == root) continue;
      int optimal_preds = 0;
      for (auto [u, id] : g.neighbors(v)) {
        const double through = dm.dist[u] + g.edge(id).weight;
        if (std::fabs(through - dm.dist[v]) <= 1e-12 * std::max(1.0, dm.dist[v]))
          ++optimal_preds;
      }
      if (optimal_preds > 1 && !flagged[v]) {
        flagged[v] = 1;
        report.violations.push_back(v);
      }
    }
  }
  std::sort(report.violations.begin(), report.violations.end());
  report.satisfied = report.violations.empty();
  return report;
}

}  // namespace lassopaths
