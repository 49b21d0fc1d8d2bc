#pragma once

#include <functional>
#include <vector>

#include "lassopaths/graph.hpp"
#include "lassopaths/sparse.hpp"

namespace lassopaths {

struct AdmmConfig {
  double rho = 1e-7;        // augmented Lagrangian parameter
  double relax = 1.0;       // over-relaxation, 1 = plain updates
  double lambda_rel = 1e-8; // lambda as a fraction of lambda_max
  double tol_primal = 1e-5;
  double tol_dual = 1e-4;
  int max_iter = 10000;
  double cg_tol = 1e-4;     // inner solve, inexact variant only
  int cg_max_iter = 100000;
  int direct_cutoff = 5000; // above this vertex count the cached factorization
                            // is skipped and the inexact variant takes over

  void validate() const;
};

struct AdmmState {
  Vec beta;
  Vec alpha;
  Vec v;  // scaled dual (multiplier / rho)
};

struct AdmmIterRecord {
  int iter = 0;
  double beta_l1 = 0.0;
  double primal_res = 0.0;
  double dual_res = 0.0;
  int cg_iters = 0;
  double elapsed_ms = 0.0;  // cumulative since solver start
};

struct AdmmTrace {
  std::vector<AdmmIterRecord> records;
  bool converged = false;  // false means the iteration budget ran out
};

struct AdmmResult {
  AdmmState state;
  AdmmTrace trace;
  double lambda = 0.0;  // the absolute regularization level that was used
};

/// Componentwise shrink toward zero: sign(x) * max(|x| - kappa, 0).
Vec soft_threshold(const Vec& x, double kappa);

/// |Q^T y|_inf, the smallest lambda with an all-zero solution.
double lambda_max(const SparseMatrix& q, const Vec& y);

/// Called with each fresh beta iterate; used by tests and studies.
using AdmmObserver = std::function<void(int iter, const Vec& beta)>;

/// Splitting solver with a cached factorization of the n x n operator
/// (Q Q^T + rho I); the m x m solve is folded through the matrix identity
/// (Q^T Q + rho I)^{-1} = (I - Q^T (Q Q^T + rho I)^{-1} Q) / rho.
AdmmResult admm_lasso(const SparseMatrix& q, const Vec& y, const AdmmConfig& cfg,
                      const AdmmObserver& observer = {});

/// Same outer loop, but the n x n system is solved by warm-started conjugate
/// gradient instead of a factorization.
AdmmResult inadmm_lasso(const SparseMatrix& q, const Vec& y, const AdmmConfig& cfg,
                        const AdmmObserver& observer = {});

/// Keeps edges with |beta_j| / w_j >= threshold and walks the shortest route
/// from s to t over them.
PathResult extract_path(const Vec& beta, const Graph& g, Vertex s, Vertex t,
                        double threshold = 0.5);

}  // namespace lassopaths
