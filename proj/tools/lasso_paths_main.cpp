#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lassopaths/admm.hpp"
#include "lassopaths/dijkstra.hpp"
#include "lassopaths/experiments.hpp"
#include "lassopaths/graph_io.hpp"
#include "lassopaths/random_graph.hpp"
#include "lassopaths/version.hpp"

namespace lp = lassopaths;

namespace {

struct SolveOptions {
  std::string graph_file;
  std::string config_file;
  int source = 0;
  int target = 0;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  double threshold = 0.5;
  bool no_timing = false;
  std::string source_pixel;
  std::string target_pixel;
  std::string image_file;
  lp::AdmmConfig admm;
};

void add_endpoint_flags(CLI::App* cmd, SolveOptions& opt) {
  cmd->add_option("--source", opt.source, "source vertex id (1-based)");
  cmd->add_option("--target", opt.target, "target vertex id (1-based)");
  cmd->add_option("--seed", opt.seed, "seed for any randomized choice");
}

void add_admm_flags(CLI::App* cmd, SolveOptions& opt) {
  cmd->add_option("--config", opt.config_file, "flat JSON with solver parameters");
  cmd->add_option("--rho", opt.admm.rho, "augmented Lagrangian parameter");
  cmd->add_option("--relax", opt.admm.relax, "over-relaxation in [1,2]");
  cmd->add_option("--lambda-rel", opt.admm.lambda_rel, "lambda as a fraction of lambda_max");
  cmd->add_option("--tol-primal", opt.admm.tol_primal, "primal residual tolerance");
  cmd->add_option("--tol-dual", opt.admm.tol_dual, "dual residual tolerance");
  cmd->add_option("--max-iter", opt.admm.max_iter, "outer iteration budget");
  cmd->add_option("--cg-tol", opt.admm.cg_tol, "inner solve relative tolerance");
  cmd->add_option("--cg-max-iter", opt.admm.cg_max_iter, "inner iteration budget");
  cmd->add_option("--threshold", opt.threshold, "|x_j| cutoff for path extraction");
  cmd->add_option("--out-dir", opt.out_dir, "directory for trace/path/summary files");
  cmd->add_flag("--no-timing", opt.no_timing,
                "write zeros in timing columns for byte-stable outputs");
}

// config file values load first; explicit flags then override them
void apply_config_file(const CLI::App* cmd, SolveOptions& opt) {
  if (opt.config_file.empty()) return;
  std::ifstream in(opt.config_file);
  if (!in) throw lp::IoError("cannot open config: " + opt.config_file);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw lp::IoError(std::string("bad config json: ") + e.what());
  }
  lp::AdmmConfig file_cfg = opt.admm;
  auto load = [&](const char* key, auto& field) {
    if (doc.contains(key)) field = doc[key].get<std::decay_t<decltype(field)>>();
  };
  load("rho", file_cfg.rho);
  load("relax", file_cfg.relax);
  load("lambda_rel", file_cfg.lambda_rel);
  load("tol_primal", file_cfg.tol_primal);
  load("tol_dual", file_cfg.tol_dual);
  load("max_iter", file_cfg.max_iter);
  load("cg_tol", file_cfg.cg_tol);
  load("cg_max_iter", file_cfg.cg_max_iter);

  auto keep_flag = [&](const char* flag, auto member) {
    if (cmd->count(flag)) file_cfg.*member = opt.admm.*member;
  };
  keep_flag("--rho", &lp::AdmmConfig::rho);
  keep_flag("--relax", &lp::AdmmConfig::relax);
  keep_flag("--lambda-rel", &lp::AdmmConfig::lambda_rel);
  keep_flag("--tol-primal", &lp::AdmmConfig::tol_primal);
  keep_flag("--tol-dual", &lp::AdmmConfig::tol_dual);
  keep_flag("--max-iter", &lp::AdmmConfig::max_iter);
  keep_flag("--cg-tol", &lp::AdmmConfig::cg_tol);
  keep_flag("--cg-max-iter", &lp::AdmmConfig::cg_max_iter);
  opt.admm = file_cfg;
}

std::pair<int, int> parse_pixel(const std::string& text) {
  std::istringstream in(text);
  int r = 0, c = 0;
  char comma = 0;
  if (!(in >> r >> comma >> c) || comma != ',' || r < 1 || c < 1)
    throw CLI::ValidationError("pixel must be `row,col` with 1-based coordinates");
  return {r, c};
}

void print_path_line(const lp::Graph& g, const lp::PathResult& res) {
  std::cout << "length " << res.length << "\npath";
  for (lp::Vertex v : res.path.vertex_sequence(g)) std::cout << " " << v + 1;
  std::cout << "\n";
}

int run_dijkstra(const SolveOptions& opt) {
  const lp::Graph g = lp::read_graph_file(opt.graph_file);
  if (opt.source < 1 || opt.target < 1)
    throw lp::VertexOutOfRangeError("--source and --target are required");
  print_path_line(g, lp::shortest_path(g, opt.source - 1, opt.target - 1));
  return 0;
}

int run_lars(const SolveOptions& opt, const std::string& trace_file,
             const std::string& samples_file, int num_samples) {
  const lp::Graph g = lp::read_graph_file(opt.graph_file);
  if (opt.source < 1 || opt.target < 1)
    throw lp::VertexOutOfRangeError("--source and --target are required");
  const lp::LarsTrace trace = lp::lars_path(g, opt.source - 1, opt.target - 1);
  if (!trace_file.empty()) {
    std::ofstream out(trace_file);
    if (!out) throw lp::IoError("cannot write " + trace_file);
    lp::write_lars_trace_csv(g, trace, out);
  }
  if (!samples_file.empty()) {
    std::ofstream out(samples_file);
    if (!out) throw lp::IoError("cannot write " + samples_file);
    lp::write_beta_samples_csv(g, trace, num_samples, out);
  }
  print_path_line(g, trace.result);
  return 0;
}

int run_experiment_cmd(lp::SolverKind kind, const SolveOptions& opt) {
  lp::ExperimentSpec spec;
  spec.solver = kind;
  spec.admm = opt.admm;
  spec.threshold = opt.threshold;
  spec.graph_path = opt.graph_file;
  spec.image_path = opt.image_file;
  spec.source = opt.source;
  spec.target = opt.target;
  if (!opt.source_pixel.empty()) spec.source_pixel = parse_pixel(opt.source_pixel);
  if (!opt.target_pixel.empty()) spec.target_pixel = parse_pixel(opt.target_pixel);
  spec.seed = opt.seed;
  spec.out_dir = opt.out_dir;
  spec.zero_timing = opt.no_timing;

  const lp::ExperimentResult res = lp::run_experiment(spec);
  std::cout << lp::solver_name(kind) << " length " << res.length << " oracle "
            << res.oracle_length << " rel_gap " << res.rel_gap << " iterations "
            << res.iterations << "\n";
  std::cout << "wrote " << res.summary_file << "\n";
  return 0;
}

int run_gen_random(int n, int m, double w_min, double w_max, std::uint64_t seed,
                   const std::string& out_file) {
  const lp::Graph g = lp::gen_random_graph(n, m, w_min, w_max, seed);
  lp::write_graph_text_file(g, out_file);
  std::cout << "wrote " << out_file << " (" << g.vertex_count() << " vertices, "
            << g.edge_count() << " edges)\n";
  return 0;
}

int run_bench(const std::vector<int>& m_list, int reps, std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  std::cout << "m,n,matvec_pair_ms,vector_ops_ms\n";
  for (int m : m_list) {
    const int n = std::max(4, m / 3);
    const lp::Graph g = lp::gen_random_graph(n, m, 10.0, 20.0, seed);
    const lp::SparseMatrix q = lp::weighted_incidence(g);
    lp::Vec x(n, 1.0), mid(m, 0.0), back(n, 0.0);

    auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) {
      q.multiply_transpose_into(x, mid);
      q.multiply_into(mid, back);
      x.swap(back);
    }
    const double matvec_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count() / reps;

    lp::Vec a(m, 0.5), b(m, 0.25), v(m, 0.0);
    t0 = Clock::now();
    for (int r = 0; r < reps; ++r) {
      const lp::Vec s = lp::soft_threshold(a, 0.1);
      for (int i = 0; i < m; ++i) v[i] += s[i] - b[i];
    }
    const double vec_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count() / reps;

    std::cout << m << "," << n << "," << matvec_ms << "," << vec_ms << "\n";
  }
  return 0;
}

int parse_threads_env() {
  const char* env = std::getenv("LASSO_PATHS_THREADS");
  if (env == nullptr) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return -1;
  return static_cast<int>(v);  // kernels are sequential; values above 1 are a cap
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shortest paths through an l1-regularized regression"};
  app.set_version_flag("--version", std::string("lasso-paths ") + lp::kVersion);
  app.require_subcommand(1);

  const int threads = parse_threads_env();
  if (threads < 0) {
    std::cerr << "LASSO_PATHS_THREADS must be a positive integer\n";
    return 2;
  }

  SolveOptions dij, lars, admm, inadmm, sci;
  std::string lars_trace, lars_samples;
  int lars_num_samples = 200;

  CLI::App* c_dij = app.add_subcommand("dijkstra", "exact shortest path");
  c_dij->add_option("--graph", dij.graph_file, "graph file (text or .json)")->required();
  add_endpoint_flags(c_dij, dij);

  CLI::App* c_lars = app.add_subcommand("lars", "exact regularization path");
  c_lars->add_option("--graph", lars.graph_file, "graph file (text or .json)")->required();
  add_endpoint_flags(c_lars, lars);
  c_lars->add_option("--trace", lars_trace, "breakpoint CSV output");
  c_lars->add_option("--beta-samples", lars_samples, "sampled beta(lambda) CSV output");
  c_lars->add_option("--num-samples", lars_num_samples, "grid size for --beta-samples");

  CLI::App* c_admm = app.add_subcommand("admm", "splitting solver, cached factorization");
  c_admm->add_option("--graph", admm.graph_file, "graph file")->required();
  add_endpoint_flags(c_admm, admm);
  add_admm_flags(c_admm, admm);

  CLI::App* c_in = app.add_subcommand("inadmm", "splitting solver, inner conjugate gradient");
  c_in->add_option("--graph", inadmm.graph_file, "graph file")->required();
  add_endpoint_flags(c_in, inadmm);
  add_admm_flags(c_in, inadmm);

  int gen_n = 0, gen_m = 0;
  double gen_wmin = 10.0, gen_wmax = 20.0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  CLI::App* c_gen = app.add_subcommand("gen-random", "seeded random connected graph");
  c_gen->add_option("--n", gen_n, "vertex count")->required();
  c_gen->add_option("--m", gen_m, "edge count")->required();
  c_gen->add_option("--w-min", gen_wmin, "smallest weight");
  c_gen->add_option("--w-max", gen_wmax, "largest weight");
  c_gen->add_option("--seed", gen_seed, "generator seed")->required();
  c_gen->add_option("--out", gen_out, "output graph file")->required();

  std::string sci_solver = "inadmm";
  CLI::App* c_sci = app.add_subcommand("scissors", "boundary tracing on a PGM image");
  c_sci->add_option("--image", sci.image_file, "8-bit PGM (P2 or P5)")->required();
  c_sci->add_option("--source-pixel", sci.source_pixel, "`row,col`, 1-based")->required();
  c_sci->add_option("--target-pixel", sci.target_pixel, "`row,col`, 1-based")->required();
  c_sci->add_option("--solver", sci_solver, "dijkstra|lars|admm|inadmm");
  add_admm_flags(c_sci, sci);
  c_sci->add_option("--seed", sci.seed, "seed (recorded in the summary)");

  std::vector<int> bench_m{1000, 10000, 100000};
  int bench_reps = 50;
  std::uint64_t bench_seed = 7;
  CLI::App* c_bench = app.add_subcommand("bench", "per-iteration kernel timings");
  c_bench->add_option("--m-list", bench_m, "edge counts to time");
  c_bench->add_option("--reps", bench_reps, "repetitions per measurement");
  c_bench->add_option("--seed", bench_seed, "graph seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // clean --help/--version vs usage error
  }

  try {
    if (c_dij->parsed()) return run_dijkstra(dij);
    if (c_lars->parsed()) return run_lars(lars, lars_trace, lars_samples, lars_num_samples);
    if (c_admm->parsed()) {
      apply_config_file(c_admm, admm);
      // a dense factorization wants the direct route whenever it fits
      return run_experiment_cmd(lp::SolverKind::Admm, admm);
    }
    if (c_in->parsed()) {
      apply_config_file(c_in, inadmm);
      return run_experiment_cmd(lp::SolverKind::Inadmm, inadmm);
    }
    if (c_gen->parsed()) return run_gen_random(gen_n, gen_m, gen_wmin, gen_wmax, gen_seed, gen_out);
    if (c_sci->parsed()) {
      apply_config_file(c_sci, sci);
      lp::SolverKind kind;
      if (sci_solver == "dijkstra") kind = lp::SolverKind::Dijkstra;
      else if (sci_solver == "lars") kind = lp::SolverKind::Lars;
      else if (sci_solver == "admm") kind = lp::SolverKind::Admm;
      else if (sci_solver == "inadmm") kind = lp::SolverKind::Inadmm;
      else {
        std::cerr << "unknown solver: " << sci_solver << "\n";
        return 2;
      }
      return run_experiment_cmd(kind, sci);
    }
    if (c_bench->parsed()) return run_bench(bench_m, bench_reps, bench_seed);
  } catch (const lp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
