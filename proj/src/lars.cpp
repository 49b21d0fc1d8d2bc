#include "lassopaths/lars.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <string>

#include "lassopaths/dense.hpp"

namespace lassopaths {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZeroTol = 1e-12;  // candidate times at or below count as zero
constexpr double kTieRel = 1e-9;    // events within this of the max fire together

double upper_clamp(double lambda) {
  return std::isfinite(lambda) ? lambda * (1.0 - kTieRel) : kInf;
}

double clamp_time(double t, double lambda) {
  return (t > kZeroTol && t < upper_clamp(lambda)) ? t : 0.0;
}

DenseMatrix active_columns(const Graph& g, const std::vector<int>& active) {
  DenseMatrix qa(g.vertex_count(), active.size());
  for (std::size_t i = 0; i < active.size(); ++i) {
    const Edge& e = g.edge(active[i]);
    qa(e.tail, i) = 1.0 / e.weight;
    qa(e.head, i) = -1.0 / e.weight;
  }
  return qa;
}

// Q_A applied to a coefficient vector, accumulated into out (length n).
void add_qa_times(const Graph& g, const std::vector<int>& active,
                  std::span<const double> coeffs, Vec& out) {
  for (std::size_t i = 0; i < active.size(); ++i) {
    const Edge& e = g.edge(active[i]);
    out[e.tail] += coeffs[i] / e.weight;
    out[e.head] -= coeffs[i] / e.weight;
  }
}

}  // namespace

AffineCoeffs compute_affine_coeffs(const Graph& g, const std::vector<int>& active,
                                   const Vec& signs, const Vec& y) {
  AffineCoeffs c;
  if (active.empty()) return c;
  if (signs.size() != active.size())
    throw DimensionMismatchError("sign vector does not match active set");

  const HouseholderQr qr(active_columns(g, active));
  if (!qr.full_column_rank())
    throw NumericalBreakdownError("active columns lost linear independence");
  c.a = qr.solve_min_norm(y);
  c.b = qr.solve_normal(signs);

  // residual guards on both solves
  Vec ra(g.vertex_count(), 0.0);
  add_qa_times(g, active, c.a, ra);
  for (std::size_t i = 0; i < ra.size(); ++i) ra[i] -= y[i];
  Vec rb(g.vertex_count(), 0.0);
  add_qa_times(g, active, c.b, rb);
  double viol = 0.0;
  for (std::size_t i = 0; i < active.size(); ++i) {
    const Edge& e = g.edge(active[i]);
    const double qta = (ra[e.tail] - ra[e.head]) / e.weight;
    const double qtb = (rb[e.tail] - rb[e.head]) / e.weight;
    viol = std::max(viol, std::fabs(qta));
    viol = std::max(viol, std::fabs(qtb - signs[i]));
  }
  if (viol > 1e-6) throw NumericalBreakdownError("affine coefficient residual too large");
  return c;
}

LarsState make_lars_state(const Graph& g, Vertex s, Vertex t,
                          std::vector<int> active, Vec signs, double lambda) {
  g.check_vertex(s);
  g.check_vertex(t);
  const int n = g.vertex_count();

  LarsState st;
  st.graph = &g;
  st.s = s;
  st.t = t;
  st.lambda = lambda;
  st.active = std::move(active);
  st.signs = std::move(signs);

  const Vec y = indicator_vector(n, s, t);
  AffineCoeffs c = compute_affine_coeffs(g, st.active, st.signs, y);
  st.a = std::move(c.a);
  st.b = std::move(c.b);

  // adjacency restricted to the active edges
  std::vector<std::vector<std::pair<Vertex, int>>> adj(n);
  for (int id : st.active) {
    const Edge& e = g.edge(id);
    adj[e.tail].push_back({e.head, id});
    adj[e.head].push_back({e.tail, id});
  }

  st.member.assign(n, 0);
  st.depth.assign(n, 0.0);
  st.parent.assign(n, -1);
  st.parent_edge.assign(n, -1);
  st.path_sign.assign(g.edge_count(), 0);

  auto grow = [&](Vertex root, char tag) {
    st.member[root] = tag;
    st.parent[root] = root;
    std::queue<Vertex> q;
    q.push(root);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (auto [v, id] : adj[u]) {
        if (st.member[v]) continue;
        st.member[v] = tag;
        st.depth[v] = st.depth[u] + g.edge(id).weight;
        st.parent[v] = u;
        st.parent_edge[v] = id;
        q.push(v);
      }
    }
  };

  grow(s, 1);
  st.connected = st.member[t] == 1;
  if (!st.connected) grow(t, 2);

  int covered = 0;
  for (Vertex v = 0; v < n; ++v)
    if (st.member[v]) ++covered;
  if (covered != static_cast<int>(st.active.size()) + (st.connected ? 1 : 2))
    throw AssumptionA1ViolatedError(
        "active edges do not form two trees rooted at the endpoints");

  if (st.connected) {
    Vertex v = t;
    while (v != s) {
      const int id = st.parent_edge[v];
      // walking parent -> v agrees with the orientation iff v is the head
      st.path_sign[id] = g.edge(id).head == v ? 1 : -1;
      v = st.parent[v];
    }
  }
  return st;
}

JoinTimes joining_times(const LarsState& st) {
  const Graph& g = *st.graph;
  const int n = g.vertex_count();
  const int m = g.edge_count();

  JoinTimes jt;
  jt.general.assign(m, 0.0);
  jt.closed.assign(m, 0.0);
  jt.sign.assign(m, 0);

  std::vector<char> is_active(m, 0);
  for (int id : st.active) is_active[id] = 1;

  // general route: correlations against the current affine segment
  Vec ra(n, 0.0);
  add_qa_times(g, st.active, st.a, ra);
  const Vec y = indicator_vector(n, st.s, st.t);
  for (int i = 0; i < n; ++i) ra[i] -= y[i];
  Vec rb(n, 0.0);
  add_qa_times(g, st.active, st.b, rb);

  for (int j = 0; j < m; ++j) {
    if (is_active[j]) continue;
    const Edge& e = g.edge(j);
    const double c0 = (ra[e.tail] - ra[e.head]) / e.weight;
    const double c1 = (rb[e.tail] - rb[e.head]) / e.weight;
    double best = 0.0;
    int best_sign = 0;
    for (int sigma : {+1, -1}) {
      const double denom = c1 - sigma;
      if (std::fabs(denom) < 1e-300) continue;
      const double cand = clamp_time(c0 / denom, st.lambda);
      if (cand > best) {
        best = cand;
        best_sign = sigma;
      }
    }
    jt.general[j] = best;
    jt.sign[j] = best_sign;
  }

  // closed route from tree sizes and depths; zero everywhere once connected
  if (!st.connected) {
    double sum_s = 0.0, sum_t = 0.0;
    int size_s = 0, size_t_ = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (st.member[v] == 1) {
        ++size_s;
        sum_s += st.depth[v];
      } else if (st.member[v] == 2) {
        ++size_t_;
        sum_t += st.depth[v];
      }
    }
    for (int j = 0; j < m; ++j) {
      if (is_active[j]) continue;
      const Edge& e = g.edge(j);
      const char mu = st.member[e.tail];
      const char mv = st.member[e.head];
      double t = 0.0;
      if (mu == 0 && mv == 0) {
        t = 0.0;  // both endpoints outside
      } else if (mu == mv) {
        t = 0.0;  // both in the same tree
      } else if (mu + mv == 1 || mu + mv == 2) {
        // one endpoint in a tree, the other outside
        const bool tail_in = mu != 0;
        const Vertex in_v = tail_in ? e.tail : e.head;
        const char tree = st.member[in_v];
        const double reach = st.depth[in_v] + e.weight;
        const double denom = (tree == 1) ? size_s * reach - sum_s
                                         : size_t_ * reach - sum_t;
        if (denom > 0.0) t = 1.0 / denom;
      } else {
        // the edge would connect the two trees
        const Vertex vs = mu == 1 ? e.tail : e.head;
        const Vertex vt = mu == 1 ? e.head : e.tail;
        const double through = st.depth[vs] + e.weight + st.depth[vt];
        const double gamma =
            size_s * size_t_ * through - size_t_ * sum_s - size_s * sum_t;
        if (gamma > 0.0) t = (size_s + size_t_) / gamma;
      }
      jt.closed[j] = clamp_time(t, st.lambda);
    }
  }
  return jt;
}

CrossTimes crossing_times(const LarsState& st) {
  const Graph& g = *st.graph;
  const int n = g.vertex_count();
  const std::size_t k = st.active.size();

  CrossTimes ct;
  ct.general.assign(k, 0.0);
  ct.closed.assign(k, 0.0);

  for (std::size_t i = 0; i < k; ++i) {
    if (std::fabs(st.b[i]) < 1e-300) continue;
    ct.general[i] = clamp_time(st.a[i] / st.b[i], st.lambda);
  }

  if (k == 0) return ct;

  // Closed route via the tree pseudo-inverse blocks. Everything reduces to
  // per-vertex signed path sums u_v = sum over the root walk of
  // (traversal sign) * w_e * s_e, their mean correction inside each tree,
  // and subtree aggregates. Pre-connection this is exactly the
  // (|T|/|R_j|) sum_R l - sum_T l form; after connection the sign pattern on
  // the target side flips and this stays exact where the naive form does not.
  std::vector<int> sign_of_edge(g.edge_count(), 0);
  for (std::size_t i = 0; i < k; ++i)
    sign_of_edge[st.active[i]] = st.signs[i] > 0 ? 1 : -1;

  std::vector<Vertex> order;
  for (Vertex v = 0; v < n; ++v)
    if (st.member[v]) order.push_back(v);
  std::sort(order.begin(), order.end(),
            [&](Vertex a, Vertex b) { return st.depth[a] < st.depth[b]; });

  Vec u(n, 0.0);
  double sum_u[3] = {0.0, 0.0, 0.0};
  int size_c[3] = {0, 0, 0};
  for (Vertex v : order) {
    const int id = st.parent_edge[v];
    if (id >= 0) {
      const Edge& e = g.edge(id);
      const double towards_parent = e.tail == v ? 1.0 : -1.0;
      u[v] = u[st.parent[v]] + towards_parent * e.weight * sign_of_edge[id];
    }
    sum_u[static_cast<int>(st.member[v])] += u[v];
    size_c[static_cast<int>(st.member[v])] += 1;
  }

  // subtree sums of the mean-corrected u, child to parent
  Vec ju(n, 0.0), sub_ju(n, 0.0);
  std::vector<int> sub_cnt(n, 0);
  for (Vertex v : order) {
    const int c = st.member[v];
    ju[v] = u[v] - sum_u[c] / size_c[c];
    sub_ju[v] = ju[v];
    sub_cnt[v] = 1;
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    if (st.parent_edge[v] >= 0) {
      sub_ju[st.parent[v]] += sub_ju[v];
      sub_cnt[st.parent[v]] += sub_cnt[v];
    }
  }

  for (std::size_t i = 0; i < k; ++i) {
    const int id = st.active[i];
    const Edge& e = g.edge(id);
    const Vertex child = (st.parent_edge[e.tail] == id) ? e.tail : e.head;
    const double sigma = e.tail == child ? 1.0 : -1.0;
    const int comp = st.member[child];

    const double b_closed = e.weight * sigma * sub_ju[child];
    double a_closed;
    if (!st.connected) {
      const double side = comp == 1 ? -1.0 : 1.0;
      a_closed = side * e.weight * sigma * sub_cnt[child] / size_c[comp];
    } else {
      a_closed = e.weight * st.path_sign[id];
    }
    double ratio = 0.0;
    if (a_closed != 0.0 && std::fabs(b_closed) > 1e-300) ratio = a_closed / b_closed;
    ct.closed[i] = clamp_time(ratio, st.lambda);
  }
  return ct;
}

std::pair<double, std::vector<LarsEvent>> next_breakpoint(const LarsState& st,
                                                          const JoinTimes& joins,
                                                          const CrossTimes& crosses) {
  double lambda_next = 0.0;
  for (double t : joins.general) lambda_next = std::max(lambda_next, t);
  for (double t : crosses.general) lambda_next = std::max(lambda_next, t);

  std::vector<LarsEvent> events;
  if (lambda_next <= kZeroTol) {
    events.push_back({LarsEventType::Terminate, -1, 0});
    return {0.0, events};
  }
  const double cut = lambda_next * (1.0 - kTieRel);
  for (std::size_t j = 0; j < joins.general.size(); ++j)
    if (joins.general[j] >= cut)
      events.push_back({LarsEventType::Join, static_cast<int>(j), joins.sign[j]});
  for (std::size_t i = 0; i < crosses.general.size(); ++i)
    if (crosses.general[i] >= cut)
      events.push_back({LarsEventType::Cross, st.active[i], 0});
  return {lambda_next, events};
}

namespace {

// reads the terminal beta as a +-1 walk from s to t
PathResult extract_terminal_path(const Graph& g, Vertex s, Vertex t, const Vec& beta) {
  const int m = g.edge_count();
  Vec x(m, 0.0);
  std::vector<int> support;
  for (int j = 0; j < m; ++j) {
    const double xj = beta[j] / g.edge(j).weight;
    if (std::fabs(xj) <= 1e-6) continue;
    if (std::fabs(std::fabs(xj) - 1.0) > 1e-6)
      throw NumericalBreakdownError("terminal incidence vector is not integral");
    x[j] = xj > 0 ? 1.0 : -1.0;
    support.push_back(j);
  }

  PathResult res;
  res.path.source = s;
  res.path.target = t;
  res.incidence = x;

  std::vector<char> used(m, 0);
  std::vector<char> visited(g.vertex_count(), 0);
  Vertex cur = s;
  visited[cur] = 1;
  while (cur != t) {
    int next_edge = -1;
    for (auto [v, id] : g.neighbors(cur)) {
      if (used[id] || x[id] == 0.0) continue;
      const bool leaves = (g.edge(id).tail == cur && x[id] > 0) ||
                          (g.edge(id).head == cur && x[id] < 0);
      if (!leaves) continue;
      if (next_edge != -1)
        throw NumericalBreakdownError("terminal support branches at a vertex");
      next_edge = id;
    }
    if (next_edge < 0)
      throw NumericalBreakdownError("terminal support has no forward edge");
    used[next_edge] = 1;
    const Edge& e = g.edge(next_edge);
    res.path.edge_ids.push_back(next_edge);
    res.path.directions.push_back(e.tail == cur ? 1 : -1);
    cur = e.tail == cur ? e.head : e.tail;
    if (visited[cur]) throw NumericalBreakdownError("terminal support revisits a vertex");
    visited[cur] = 1;
    res.length += e.weight;
  }
  if (res.path.edge_ids.size() != support.size())
    throw NumericalBreakdownError("terminal support is larger than the walked path");
  return res;
}

}  // namespace

LarsTrace lars_path(const Graph& g, Vertex s, Vertex t) {
  g.check_vertex(s);
  g.check_vertex(t);
  if (s == t) throw VertexOutOfRangeError("path query needs distinct endpoints");

  const int m = g.edge_count();
  const Vec y = indicator_vector(g.vertex_count(), s, t);
  const SparseMatrix q = weighted_incidence(g);

  LarsTrace trace;
  std::vector<int> active;
  Vec signs;
  double lambda = kInf;

  const int max_steps = 3 * m + 16;
  for (int step = 0; step < max_steps; ++step) {
    LarsState st = make_lars_state(g, s, t, active, signs, lambda);

    const JoinTimes joins = joining_times(st);
    const CrossTimes crosses = crossing_times(st);
    double gap = 0.0;
    for (int j = 0; j < m; ++j)
      gap = std::max(gap, std::fabs(joins.general[j] - joins.closed[j]));
    for (std::size_t i = 0; i < crosses.general.size(); ++i)
      gap = std::max(gap, std::fabs(crosses.general[i] - crosses.closed[i]));
    trace.max_route_gap = std::max(trace.max_route_gap, gap);

    auto [lambda_next, events] = next_breakpoint(st, joins, crosses);

    if (lambda_next <= 0.0) {
      // terminal segment: beta(0) = a over the current active set
      Vec beta(m, 0.0);
      for (std::size_t i = 0; i < active.size(); ++i) beta[active[i]] = st.a[i];

      Breakpoint bp;
      bp.lambda = 0.0;
      bp.route_gap = gap;
      for (std::size_t i = 0; i < active.size(); ++i) {
        const int id = active[i];
        if (std::fabs(beta[id]) / g.edge(id).weight <= 1e-6) {
          beta[id] = 0.0;
          bp.events.push_back({LarsEventType::Cross, id, 0});
        } else {
          bp.active.push_back(id);
          bp.signs.push_back(signs[i]);
          bp.a.push_back(st.a[i]);
          bp.b.push_back(0.0);
        }
      }
      bp.events.push_back({LarsEventType::Terminate, -1, 0});
      bp.kkt = kkt_residual(q, y, beta, 0.0);
      trace.breakpoints.push_back(std::move(bp));
      trace.final_beta = beta;
      trace.result = extract_terminal_path(g, s, t, beta);
      return trace;
    }

    // apply the tied events, guarding the tree structure
    std::set<Vertex> joined_vertices;
    int connects = 0;
    for (const LarsEvent& ev : events) {
      if (ev.type == LarsEventType::Cross) {
        if (!st.connected)
          throw AssumptionA1ViolatedError(
              "crossing before the trees connect implies non-unique shortest paths");
        throw NumericalBreakdownError("unexpected crossing after connection");
      }
      const Edge& e = g.edge(ev.edge);
      const char mu = st.member[e.tail];
      const char mv = st.member[e.head];
      if (st.connected || (mu != 0 && mu == mv))
        throw AssumptionA1ViolatedError("joining edge would close a cycle");
      if (mu != 0 && mv != 0) {
        if (++connects > 1)
          throw AssumptionA1ViolatedError("two connecting edges tie; paths not unique");
      } else {
        const Vertex fresh = mu == 0 ? e.tail : e.head;
        if (!joined_vertices.insert(fresh).second)
          throw AssumptionA1ViolatedError(
              "two edges reach the same vertex at one breakpoint");
      }
      active.push_back(ev.edge);
      signs.push_back(static_cast<double>(ev.sign));
    }

    AffineCoeffs coeffs = compute_affine_coeffs(g, active, signs, y);
    Breakpoint bp;
    bp.lambda = lambda_next;
    bp.events = std::move(events);
    bp.active = active;
    bp.signs = signs;
    bp.a = coeffs.a;
    bp.b = coeffs.b;
    bp.route_gap = gap;

    Vec beta(m, 0.0);
    for (std::size_t i = 0; i < active.size(); ++i)
      beta[active[i]] = coeffs.a[i] - lambda_next * coeffs.b[i];
    bp.kkt = kkt_residual(q, y, beta, lambda_next);
    trace.breakpoints.push_back(std::move(bp));

    lambda = lambda_next;
  }
  throw NumericalBreakdownError("path solver did not terminate");
}

Vec beta_at(const LarsTrace& trace, double lambda) {
  if (lambda < 0.0) throw Error("lambda must be nonnegative");
  const std::size_t m = trace.final_beta.size();
  Vec beta(m, 0.0);
  if (lambda == 0.0) return trace.final_beta;

  const Breakpoint* segment = nullptr;
  for (const Breakpoint& bp : trace.breakpoints) {
    if (bp.lambda > lambda)
      segment = &bp;  // deepest breakpoint still above lambda
    else
      break;
  }
  if (segment == nullptr) return beta;  // above the first breakpoint
  for (std::size_t i = 0; i < segment->active.size(); ++i)
    beta[segment->active[i]] = segment->a[i] - lambda * segment->b[i];
  return beta;
}

double kkt_residual(const SparseMatrix& q, const Vec& y, const Vec& beta, double lambda) {
  const Vec qb = q.multiply(beta);
  Vec r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) r[i] = y[i] - qb[i];
  const Vec corr = q.multiply_transpose(r);

  const double scale = std::max(1.0, norm_inf(beta));
  double worst = 0.0;
  for (std::size_t j = 0; j < corr.size(); ++j) {
    if (std::fabs(beta[j]) > 1e-9 * scale) {
      const double sj = beta[j] > 0 ? 1.0 : -1.0;
      worst = std::max(worst, std::fabs(corr[j] - sj * lambda));
    } else {
      worst = std::max(worst, std::fabs(corr[j]) - lambda);
    }
  }
  return std::max(worst, 0.0);
}

}  // namespace lassopaths
