#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "lassopaths/admm.hpp"
#include "lassopaths/lars.hpp"

namespace lassopaths {

enum class SolverKind { Dijkstra, Lars, Admm, Inadmm };

std::string solver_name(SolverKind kind);

struct RandomGraphParams {
  int n = 0;
  int m = 0;
  double w_min = 10.0;
  double w_max = 20.0;
};

/// Everything behind one reproducible run. Vertex ids and pixel coordinates
/// here are 1-based (the file/CLI convention); 0 means "pick from the seed".
struct ExperimentSpec {
  SolverKind solver = SolverKind::Inadmm;
  AdmmConfig admm;
  double threshold = 0.5;

  // exactly one graph source
  std::optional<RandomGraphParams> random_graph;
  std::string image_path;
  std::string graph_path;

  int source = 0;
  int target = 0;
  std::optional<std::pair<int, int>> source_pixel;  // (row, col), 1-based
  std::optional<std::pair<int, int>> target_pixel;

  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  bool zero_timing = false;  // write zeros in timing columns for byte-stable files
};

struct ExperimentResult {
  double length = 0.0;         // solver estimate: |beta|_1 or the exact length
  double oracle_length = 0.0;  // Dijkstra
  double rel_gap = 0.0;
  int iterations = 0;
  double wall_ms = 0.0;
  PathResult path;
  std::string trace_file;
  std::string path_file;
  std::string overlay_file;
  std::string summary_file;
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

// trace/plot writers shared by the harness and the command line tool
void write_admm_trace_csv(const AdmmTrace& trace, std::ostream& out, bool zero_timing);
void write_lars_trace_csv(const Graph& g, const LarsTrace& trace, std::ostream& out);

/// beta(lambda) sampled on breakpoints plus an even grid, one edge per column.
void write_beta_samples_csv(const Graph& g, const LarsTrace& trace, int samples,
                            std::ostream& out);

}  // namespace lassopaths
