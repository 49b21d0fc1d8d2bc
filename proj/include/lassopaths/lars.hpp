#pragma once

#include <utility>
#include <vector>

#include "lassopaths/dijkstra.hpp"
#include "lassopaths/graph.hpp"
#include "lassopaths/sparse.hpp"

namespace lassopaths {

enum class LarsEventType { Join, Cross, Terminate };

struct LarsEvent {
  LarsEventType type = LarsEventType::Terminate;
  int edge = -1;
  int sign = 0;  // joins only
};

/// One breakpoint of the piecewise-linear solution path. The stored (a, b)
/// describe the segment below this lambda: beta_active(l) = a - l * b.
struct Breakpoint {
  double lambda = 0.0;
  std::vector<LarsEvent> events;
  std::vector<int> active;  // after the events
  Vec signs;
  Vec a;
  Vec b;
  double route_gap = 0.0;  // max disagreement between the two time routes
  double kkt = 0.0;        // KKT violation of beta(lambda) at this breakpoint
};

struct LarsTrace {
  std::vector<Breakpoint> breakpoints;  // strictly decreasing lambda, ends at 0
  Vec final_beta;                       // beta at lambda = 0, length m
  PathResult result;
  double max_route_gap = 0.0;
};

/// Solver state between two breakpoints. make_lars_state derives everything
/// (affine coefficients, tree membership, depths) from the active set alone,
/// so tests can reconstruct the state at any step independently.
struct LarsState {
  const Graph* graph = nullptr;
  Vertex s = 0;
  Vertex t = 0;
  double lambda = 0.0;  // current breakpoint, +inf before the first
  std::vector<int> active;
  Vec signs;
  Vec a;
  Vec b;

  // active-forest bookkeeping for the tree-based closed forms
  std::vector<char> member;  // 0 outside, 1 s-tree, 2 t-tree (all 1 once connected)
  Vec depth;                 // distance to the own root inside the forest
  std::vector<Vertex> parent;
  std::vector<int> parent_edge;
  bool connected = false;
  std::vector<int> path_sign;  // per edge: +-1 traversal sign on the s-t path, else 0
};

LarsState make_lars_state(const Graph& g, Vertex s, Vertex t,
                          std::vector<int> active, Vec signs, double lambda);

struct AffineCoeffs {
  Vec a;
  Vec b;
};

/// a = (Q_A^T Q_A)^+ Q_A^T y and b = (Q_A^T Q_A)^+ s via least-squares solves.
AffineCoeffs compute_affine_coeffs(const Graph& g, const std::vector<int>& active,
                                   const Vec& signs, const Vec& y);

/// Joining times over the inactive edges, by both routes: the linear-algebra
/// form from the KKT system and the closed form from tree sizes and depths.
/// Entries are clamped to 0 outside (0, lambda).
struct JoinTimes {
  Vec general;             // length m, zero on active edges
  Vec closed;              // same layout
  std::vector<int> sign;   // sign a joining edge would enter with
};
JoinTimes joining_times(const LarsState& st);

/// Crossing times over the active set, by both routes, same clamping.
struct CrossTimes {
  Vec general;  // indexed like st.active
  Vec closed;
};
CrossTimes crossing_times(const LarsState& st);

/// The next breakpoint and every event tied with it (1e-9 relative).
std::pair<double, std::vector<LarsEvent>> next_breakpoint(const LarsState& st,
                                                          const JoinTimes& joins,
                                                          const CrossTimes& crosses);

/// Full solution path from lambda = +inf down to 0. The terminal incidence
/// vector equals the shortest path and |beta(0)|_1 its length.
LarsTrace lars_path(const Graph& g, Vertex s, Vertex t);

/// beta(lambda) assembled from the bracketing segment of the trace.
Vec beta_at(const LarsTrace& trace, double lambda);

/// Largest violation of the optimality conditions: active columns must meet
/// the equality at sign(beta_j) * lambda, inactive ones the |.| <= lambda bound.
double kkt_residual(const SparseMatrix& q, const Vec& y, const Vec& beta, double lambda);

}  // namespace lassopaths
