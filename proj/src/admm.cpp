#include "lassopaths/admm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <queue>

#include "lassopaths/dense.hpp"
#include "lassopaths/dijkstra.hpp"

namespace lassopaths {

void AdmmConfig::validate() const {
  if (!(rho > 0.0)) throw Error("rho must be positive");
  if (relax < 1.0 || relax > 2.0) throw Error("relax must lie in [1, 2]");
  if (!(lambda_rel > 0.0)) throw Error("lambda_rel must be positive");
  if (!(tol_primal > 0.0) || !(tol_dual > 0.0)) throw Error("tolerances must be positive");
  if (max_iter <= 0) throw Error("max_iter must be positive");
  if (!(cg_tol > 0.0)) throw Error("cg_tol must be positive");
  if (cg_max_iter <= 0) throw Error("cg_max_iter must be positive");
}

Vec soft_threshold(const Vec& x, double kappa) {
  if (kappa < 0.0) throw Error("soft threshold needs a nonnegative level");
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double shrunk = std::fabs(x[i]) - kappa;
    out[i] = shrunk > 0.0 ? (x[i] > 0.0 ? shrunk : -shrunk) : 0.0;
  }
  return out;
}

double lambda_max(const SparseMatrix& q, const Vec& y) {
  return norm_inf(q.multiply_transpose(y));
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// eta-solver abstraction: solves (Q Q^T + rho I) eta = rhs
struct EtaSolver {
  virtual ~EtaSolver() = default;
  virtual Vec solve(const Vec& rhs, int& cg_iters) = 0;
};

struct DirectEta final : EtaSolver {
  DirectEta(const SparseMatrix& q, double rho) {
    const std::size_t n = q.rows();
    DenseMatrix gram(n, n);
    // Q Q^T = sum_j q_j q_j^T; incidence-style columns carry two entries
    for (std::size_t j = 0; j < q.cols(); ++j) {
      auto [rows, vals] = q.column(j);
      for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < rows.size(); ++b)
          gram(rows[a], rows[b]) += vals[a] * vals[b];
    }
    for (std::size_t i = 0; i < n; ++i) gram(i, i) += rho;
    try {
      factor_.emplace(gram);
    } catch (const NotPositiveDefiniteError& e) {
      throw FactorizationFailureError(e.what());
    }
  }

  Vec solve(const Vec& rhs, int& cg_iters) override {
    cg_iters = 0;
    return factor_->solve(rhs);
  }

  std::optional<SpdFactor> factor_;
};

struct CgEta final : EtaSolver {
  CgEta(const SparseMatrix& q, double rho, double tol, int max_iter)
      : tol_(tol), max_iter_(max_iter), warm_(q.rows(), 0.0), scratch_(q.cols(), 0.0) {
    op_.dim = q.rows();
    op_.apply = [this, &q, rho](std::span<const double> x, std::span<double> out) {
      q.multiply_transpose_into(x, scratch_);
      q.multiply_into(scratch_, out);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += rho * x[i];
    };
  }

  Vec solve(const Vec& rhs, int& cg_iters) override {
    // The tolerance counts as residual reduction from the warm start. Measured
    // against |rhs| alone, a slightly stale eta passes untouched, and the
    // beta update divides that staleness by rho; the outer loop then loses
    // contraction. Reduction keeps each solve improving on its seed.
    const double bnorm = norm2(rhs);
    cg_iters = 0;
    if (bnorm == 0.0) {
      std::fill(warm_.begin(), warm_.end(), 0.0);
      return warm_;
    }
    Vec defect(rhs.size());
    op_.apply(warm_, defect);
    for (std::size_t i = 0; i < defect.size(); ++i) defect[i] = rhs[i] - defect[i];
    const double d0 = norm2(defect);
    constexpr double kFloor = 1e-14;  // roundoff plateau guard
    if (d0 <= kFloor * bnorm) return warm_;

    const double tol_eff =
        std::clamp(tol_ * d0 / bnorm, kFloor, std::max(tol_, kFloor));
    CgResult res = conjugate_gradient(op_, rhs, warm_, tol_eff, max_iter_);
    if (!res.converged)
      throw CgStagnationError("inner conjugate gradient missed its tolerance");
    cg_iters = res.iterations;
    warm_ = res.x;
    return std::move(res.x);
  }

  LinearOperator op_;
  double tol_;
  int max_iter_;
  Vec warm_;  // previous solution seeds the next solve
  Vec scratch_;
};

AdmmResult run_splitting(const SparseMatrix& q, const Vec& y, const AdmmConfig& cfg,
                         EtaSolver& eta, const AdmmObserver& observer) {
  const std::size_t m = q.cols();
  const double lambda = cfg.lambda_rel * lambda_max(q, y);
  const double kappa = lambda / cfg.rho;
  const Vec qty = q.multiply_transpose(y);

  AdmmResult res;
  res.lambda = lambda;
  res.state.beta.assign(m, 0.0);
  res.state.alpha.assign(m, 0.0);
  res.state.v.assign(m, 0.0);
  Vec& beta = res.state.beta;
  Vec& alpha = res.state.alpha;
  Vec& v = res.state.v;

  const auto start = Clock::now();
  Vec h(m), relaxed(m), shift(m);
  for (int it = 1; it <= cfg.max_iter; ++it) {
    // h = Q^T y + rho (alpha - v); beta = (h - Q^T eta) / rho
    for (std::size_t i = 0; i < m; ++i) h[i] = qty[i] + cfg.rho * (alpha[i] - v[i]);
    int cg_iters = 0;
    const Vec eta_sol = eta.solve(q.multiply(h), cg_iters);
    const Vec qteta = q.multiply_transpose(eta_sol);
    for (std::size_t i = 0; i < m; ++i) beta[i] = (h[i] - qteta[i]) / cfg.rho;
    if (observer) observer(it, beta);

    for (std::size_t i = 0; i < m; ++i)
      relaxed[i] = cfg.relax * beta[i] + (1.0 - cfg.relax) * alpha[i];
    for (std::size_t i = 0; i < m; ++i) shift[i] = relaxed[i] + v[i];
    const Vec alpha_next = soft_threshold(shift, kappa);

    double dual_sq = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = alpha_next[i] - alpha[i];
      dual_sq += d * d;
    }
    alpha = alpha_next;
    for (std::size_t i = 0; i < m; ++i) v[i] += relaxed[i] - alpha[i];

    double primal_sq = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = beta[i] - alpha[i];
      primal_sq += d * d;
    }
    const double primal = std::sqrt(primal_sq);
    // Unscaled alpha movement. Scaling by rho would pass tol_dual on the very
    // first iterations at rho = 1e-7 while the iterates still move by ~1e-1,
    // and the soft-threshold can align beta and alpha exactly during that
    // transient, so the rho-scaled pair would stop far from the optimum.
    const double dual = std::sqrt(dual_sq);

    res.trace.records.push_back(
        {it, norm1(beta), primal, dual, cg_iters, ms_since(start)});
    if (primal <= cfg.tol_primal && dual <= cfg.tol_dual) {
      res.trace.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace

AdmmResult admm_lasso(const SparseMatrix& q, const Vec& y, const AdmmConfig& cfg,
                      const AdmmObserver& observer) {
  cfg.validate();
  if (q.rows() != y.size()) throw DimensionMismatchError("rhs does not match Q");
  if (static_cast<int>(q.rows()) > cfg.direct_cutoff)
    return inadmm_lasso(q, y, cfg, observer);
  DirectEta eta(q, cfg.rho);
  return run_splitting(q, y, cfg, eta, observer);
}

AdmmResult inadmm_lasso(const SparseMatrix& q, const Vec& y, const AdmmConfig& cfg,
                        const AdmmObserver& observer) {
  cfg.validate();
  if (q.rows() != y.size()) throw DimensionMismatchError("rhs does not match Q");
  CgEta eta(q, cfg.rho, cfg.cg_tol, cfg.cg_max_iter);
  return run_splitting(q, y, cfg, eta, observer);
}

PathResult extract_path(const Vec& beta, const Graph& g, Vertex s, Vertex t,
                        double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw Error("extraction threshold must lie in (0, 1)");
  g.check_vertex(s);
  g.check_vertex(t);
  if (beta.size() != static_cast<std::size_t>(g.edge_count()))
    throw DimensionMismatchError("beta length does not match the edge count");

  std::vector<char> kept(g.edge_count(), 0);
  for (int j = 0; j < g.edge_count(); ++j)
    if (std::fabs(beta[j]) / g.edge(j).weight >= threshold) kept[j] = 1;

  // shortest walk from s to t over the kept edges
  const int n = g.vertex_count();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Vec dist(n, kInf);
  std::vector<int> parent_edge(n, -1);
  std::vector<Vertex> parent(n, -1);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[s] = 0.0;
  heap.push({0.0, s});
  std::vector<char> settled(n, 0);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    if (u == t) break;
    for (auto [w, id] : g.neighbors(u)) {
      if (!kept[id] || settled[w]) continue;
      const double cand = d + g.edge(id).weight;
      if (cand < dist[w]) {
        dist[w] = cand;
        parent[w] = u;
        parent_edge[w] = id;
        heap.push({cand, w});
      }
    }
  }
  if (s != t && !settled[t])
    throw NoPathAtThresholdError("kept edges do not connect the endpoints");

  PathResult res;
  res.path.source = s;
  res.path.target = t;
  res.incidence.assign(g.edge_count(), 0.0);
  std::vector<int> rev;
  for (Vertex cur = t; cur != s; cur = parent[cur]) rev.push_back(parent_edge[cur]);
  std::reverse(rev.begin(), rev.end());
  Vertex cur = s;
  for (int id : rev) {
    const Edge& e = g.edge(id);
    const int dir = e.tail == cur ? 1 : -1;
    res.path.edge_ids.push_back(id);
    res.path.directions.push_back(dir);
    res.incidence[id] = dir;
    res.length += e.weight;
    cur = e.tail == cur ? e.head : e.tail;
  }
  return res;
}

}  // namespace lassopaths
