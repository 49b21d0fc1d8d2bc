#include "lassopaths/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "lassopaths/dijkstra.hpp"
#include "lassopaths/graph_io.hpp"
#include "lassopaths/image.hpp"
#include "lassopaths/random_graph.hpp"

namespace lassopaths {

std::string solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::Dijkstra: return "dijkstra";
    case SolverKind::Lars: return "lars";
    case SolverKind::Admm: return "admm";
    case SolverKind::Inadmm: return "inadmm";
  }
  return "unknown";
}

void write_admm_trace_csv(const AdmmTrace& trace, std::ostream& out, bool zero_timing) {
  out << "iter,beta_l1,primal_res,dual_res,cg_iters,elapsed_ms\n";
  out << std::setprecision(17);
  for (const AdmmIterRecord& r : trace.records) {
    out << r.iter << "," << r.beta_l1 << "," << r.primal_res << "," << r.dual_res
        << "," << r.cg_iters << "," << (zero_timing ? 0.0 : r.elapsed_ms) << "\n";
  }
}

namespace {

const char* event_name(LarsEventType t) {
  switch (t) {
    case LarsEventType::Join: return "join";
    case LarsEventType::Cross: return "cross";
    case LarsEventType::Terminate: return "terminate";
  }
  return "?";
}

double breakpoint_l1(const Breakpoint& bp) {
  double s = 0.0;
  for (std::size_t i = 0; i < bp.a.size(); ++i)
    s += std::fabs(bp.a[i] - bp.lambda * bp.b[i]);
  return s;
}

}  // namespace

void write_lars_trace_csv(const Graph& g, const LarsTrace& trace, std::ostream& out) {
  out << "step,lambda,event,edge_u,edge_v,sign,beta_l1\n";
  out << std::setprecision(17);
  int step = 0;
  for (const Breakpoint& bp : trace.breakpoints) {
    ++step;
    const double l1 = breakpoint_l1(bp);
    for (const LarsEvent& ev : bp.events) {
      const int u = ev.edge >= 0 ? g.edge(ev.edge).tail + 1 : 0;
      const int v = ev.edge >= 0 ? g.edge(ev.edge).head + 1 : 0;
      out << step << "," << bp.lambda << "," << event_name(ev.type) << "," << u << ","
          << v << "," << ev.sign << "," << l1 << "\n";
    }
  }
}

void write_beta_samples_csv(const Graph& g, const LarsTrace& trace, int samples,
                            std::ostream& out) {
  out << "lambda";
  for (const Edge& e : g.edges()) out << ",e" << e.tail + 1 << "_" << e.head + 1;
  out << "\n";
  if (trace.breakpoints.empty()) return;

  std::vector<double> grid;
  const double top = trace.breakpoints.front().lambda;
  for (const Breakpoint& bp : trace.breakpoints) grid.push_back(bp.lambda);
  for (int i = 0; i < samples; ++i)
    grid.push_back(top * (samples - 1 - i) / std::max(1, samples - 1));
  std::sort(grid.rbegin(), grid.rend());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  out << std::setprecision(17);
  for (double lambda : grid) {
    const Vec beta = beta_at(trace, lambda);
    out << lambda;
    for (double b : beta) out << "," << b;
    out << "\n";
  }
}

namespace {

using Clock = std::chrono::steady_clock;

struct BuiltGraph {
  Graph graph;
  std::optional<ScissorsGraph> scissors;
  std::optional<GrayImage> image;
};

BuiltGraph build_input_graph(const ExperimentSpec& spec) {
  const int sources = int(spec.random_graph.has_value()) + int(!spec.image_path.empty()) +
                      int(!spec.graph_path.empty());
  if (sources != 1) throw Error("specify exactly one graph source");

  BuiltGraph built;
  if (spec.random_graph) {
    if (!spec.seed) throw Error("random graphs need a seed");
    const RandomGraphParams& p = *spec.random_graph;
    built.graph = gen_random_graph(p.n, p.m, p.w_min, p.w_max, *spec.seed);
  } else if (!spec.image_path.empty()) {
    built.image = read_pgm(spec.image_path);
    built.scissors = scissors_graph(*built.image);
    built.graph = built.scissors->graph;
  } else {
    built.graph = read_graph_file(spec.graph_path);
  }
  return built;
}

std::pair<Vertex, Vertex> resolve_endpoints(const ExperimentSpec& spec,
                                            const BuiltGraph& built) {
  const Graph& g = built.graph;
  auto from_pixel = [&](const std::pair<int, int>& rc) {
    if (!built.scissors) throw Error("pixel endpoints need an image source");
    const int r = rc.first - 1, c = rc.second - 1;
    if (r < 0 || r >= built.scissors->height || c < 0 || c >= built.scissors->width)
      throw VertexOutOfRangeError("pixel outside the image");
    return built.scissors->vertex_of(r, c);
  };

  Vertex s = -1, t = -1;
  if (spec.source_pixel) s = from_pixel(*spec.source_pixel);
  if (spec.target_pixel) t = from_pixel(*spec.target_pixel);
  if (spec.source > 0) s = spec.source - 1;
  if (spec.target > 0) t = spec.target - 1;

  if (s < 0 || t < 0) {
    if (!spec.seed) throw Error("endpoint selection needs a seed");
    Rng rng(*spec.seed * 0x9E3779B97F4A7C15ULL + 1);
    if (s < 0) s = static_cast<Vertex>(rng.below(g.vertex_count()));
    while (t < 0 || t == s) t = static_cast<Vertex>(rng.below(g.vertex_count()));
  }
  g.check_vertex(s);
  g.check_vertex(t);
  if (s == t) throw Error("source and target must differ");
  return {s, t};
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  namespace fs = std::filesystem;
  BuiltGraph built = build_input_graph(spec);
  const Graph& g = built.graph;
  const auto [s, t] = resolve_endpoints(spec, built);

  const PathResult oracle = shortest_path(g, s, t);

  ExperimentResult result;
  result.oracle_length = oracle.length;

  fs::create_directories(spec.out_dir);
  const std::string trace_path = spec.out_dir + "/trace.csv";

  const auto start = Clock::now();
  switch (spec.solver) {
    case SolverKind::Dijkstra: {
      result.path = oracle;
      result.length = oracle.length;
      break;
    }
    case SolverKind::Lars: {
      const LarsTrace trace = lars_path(g, s, t);
      result.length = norm1(trace.final_beta);
      result.iterations = static_cast<int>(trace.breakpoints.size());
      result.path = trace.result;
      std::ofstream out(trace_path);
      write_lars_trace_csv(g, trace, out);
      result.trace_file = trace_path;
      break;
    }
    case SolverKind::Admm:
    case SolverKind::Inadmm: {
      const SparseMatrix q = weighted_incidence(g);
      const Vec y = indicator_vector(g.vertex_count(), s, t);
      const AdmmResult sol = spec.solver == SolverKind::Admm
                                 ? admm_lasso(q, y, spec.admm)
                                 : inadmm_lasso(q, y, spec.admm);
      result.length = norm1(sol.state.beta);
      result.iterations = static_cast<int>(sol.trace.records.size());
      {
        std::ofstream out(trace_path);
        write_admm_trace_csv(sol.trace, out, spec.zero_timing);
        result.trace_file = trace_path;
      }
      // extraction after the trace is on disk, so a failure leaves diagnostics
      result.path = extract_path(sol.state.beta, g, s, t, spec.threshold);
      break;
    }
  }
  result.wall_ms = spec.zero_timing
                       ? 0.0
                       : std::chrono::duration<double, std::milli>(Clock::now() - start)
                             .count();
  result.rel_gap = result.oracle_length > 0.0
                       ? std::fabs(result.length - result.oracle_length) /
                             result.oracle_length
                       : 0.0;

  // vertex list, 1-based
  const std::string path_path = spec.out_dir + "/path.txt";
  {
    std::ofstream out(path_path);
    out << std::setprecision(17) << "# length " << result.path.length << "\n";
    const std::vector<Vertex> seq = result.path.path.vertex_sequence(g);
    for (std::size_t i = 0; i < seq.size(); ++i)
      out << seq[i] + 1 << (i + 1 == seq.size() ? "\n" : " ");
    result.path_file = path_path;
  }

  if (built.image) {
    GrayImage overlay = *built.image;
    for (Vertex v : result.path.path.vertex_sequence(g)) {
      const auto [r, c] = built.scissors->pixel_of(v);
      overlay.at(r, c) = 0;
    }
    const std::string overlay_path = spec.out_dir + "/overlay.pgm";
    write_pgm(overlay, overlay_path);
    result.overlay_file = overlay_path;
  }

  nlohmann::json summary = {
      {"solver", solver_name(spec.solver)},
      {"length", result.length},
      {"oracle_length", result.oracle_length},
      {"rel_gap", result.rel_gap},
      {"iterations", result.iterations},
      {"wall_ms", result.wall_ms},
      {"seed", spec.seed ? nlohmann::json(*spec.seed) : nlohmann::json(nullptr)},
  };
  const std::string summary_path = spec.out_dir + "/summary.json";
  {
    std::ofstream out(summary_path);
    out << summary.dump(2) << "\n";
    result.summary_file = summary_path;
  }
  return result;
}

}  // namespace lassopaths
