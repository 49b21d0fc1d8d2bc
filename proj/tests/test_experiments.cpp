#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "lassopaths/lars.hpp"

#include <json.hpp>

#include "helpers.hpp"
#include "lassopaths/experiments.hpp"
#include "lassopaths/graph_io.hpp"
#include "lassopaths/image.hpp"
#include "lassopaths/random_graph.hpp"

using namespace lassopaths;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lassopaths_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

GrayImage disk_image(int size, double radius) {
  GrayImage img;
  img.width = img.height = size;
  img.pixels.assign(size * size, 0);
  const double c = (size - 1) / 2.0;
  for (int r = 0; r < size; ++r) {
    for (int col = 0; col < size; ++col) {
      const double d = std::hypot(r - c, col - c);
      const double blend = 1.0 / (1.0 + std::exp((d - radius) / 1.2));
      img.at(r, col) = static_cast<std::uint8_t>(30.0 + 190.0 * blend);
    }
  }
  return img;
}

}  // namespace

TEST_CASE("random graph generator: counts, range, determinism") {
  const Graph g = gen_random_graph(1000, 2688, 10.0, 20.0, 42);
  CHECK(g.vertex_count() == 1000);
  CHECK(g.edge_count() == 2688);
  for (const Edge& e : g.edges()) {
    CHECK(e.weight >= 10.0);
    CHECK(e.weight <= 20.0);
  }

  const Graph again = gen_random_graph(1000, 2688, 10.0, 20.0, 42);
  for (int j = 0; j < g.edge_count(); ++j) {
    CHECK(g.edge(j).tail == again.edge(j).tail);
    CHECK(g.edge(j).head == again.edge(j).head);
    CHECK(g.edge(j).weight == again.edge(j).weight);
  }
  const Graph other = gen_random_graph(1000, 2688, 10.0, 20.0, 43);
  bool identical = true;
  for (int j = 0; j < g.edge_count() && identical; ++j)
    identical = g.edge(j).tail == other.edge(j).tail &&
                g.edge(j).head == other.edge(j).head;
  CHECK_FALSE(identical);

  CHECK(gen_random_graph(2, 1, 1.0, 2.0, 1).edge_count() == 1);
  CHECK_THROWS_AS(gen_random_graph(3, 1, 1.0, 2.0, 1), InfeasibleEdgeCountError);
  CHECK_THROWS_AS(gen_random_graph(3, 4, 1.0, 2.0, 1), InfeasibleEdgeCountError);
}

TEST_CASE("random spanning trees cover all labeled shapes on four vertices") {
  std::set<std::vector<int>> shapes;
  for (std::uint64_t seed = 0; seed < 600; ++seed) {
    const Graph t = gen_random_graph(4, 3, 1.0, 2.0, seed);
    std::vector<int> key;
    for (const Edge& e : t.edges()) {
      key.push_back(e.tail);
      key.push_back(e.head);
    }
    std::sort(key.begin(), key.end());
    std::vector<int> canon;
    for (const Edge& e : t.edges()) canon.push_back(e.tail * 4 + e.head);
    std::sort(canon.begin(), canon.end());
    shapes.insert(canon);
  }
  CHECK(shapes.size() == 16);  // 4^{4-2} labeled trees
}

TEST_CASE("scissors graph shapes") {
  GrayImage tiny;
  tiny.width = tiny.height = 2;
  tiny.pixels = {10, 20, 30, 40};
  const ScissorsGraph sg = scissors_graph(tiny);
  CHECK(sg.graph.vertex_count() == 4);
  CHECK(sg.graph.edge_count() == 6);

  GrayImage strip;
  strip.width = 1;
  strip.height = 5;
  strip.pixels.assign(5, 0);
  CHECK_THROWS_AS(scissors_graph(strip), ImageTooSmallError);

  GrayImage tall_icon;
  tall_icon.width = 57;
  tall_icon.height = 60;
  tall_icon.pixels.assign(57 * 60, 128);
  const ScissorsGraph big = scissors_graph(tall_icon);
  CHECK(big.graph.vertex_count() == 3420);
  CHECK(big.graph.edge_count() == 13331);

  // interior vertices have all eight neighbors
  int degree = 0;
  for (auto [v, id] : big.graph.neighbors(big.vertex_of(10, 10))) {
    (void)v;
    (void)id;
    ++degree;
  }
  CHECK(degree == 8);
}

TEST_CASE("gradient weights: flat image, floor, and a step edge") {
  GrayImage flat;
  flat.width = flat.height = 6;
  flat.pixels.assign(36, 77);
  const ScissorsWeights w(flat);
  CHECK(w.weight(2, 2, 2, 3) == doctest::Approx(1.01));
  CHECK(w.weight(2, 2, 3, 3) == doctest::Approx(1.01 * std::sqrt(2.0)));
  CHECK_THROWS_AS(w.weight(0, 0, 3, 3), NotNeighborsError);

  // vertical black/white step: along-edge moves sit at the weight floor
  GrayImage step;
  step.width = step.height = 8;
  step.pixels.assign(64, 0);
  for (int r = 0; r < 8; ++r)
    for (int c = 4; c < 8; ++c) step.at(r, c) = 255;
  const ScissorsWeights sw(step);
  const double along = sw.weight(3, 3, 4, 3);   // both pixels at peak gradient
  const double across = sw.weight(3, 0, 4, 0);  // flat region
  CHECK(along == doctest::Approx(0.01));
  CHECK(along < across / 10.0);
  CHECK(edge_weight_from_gradient(step, 3, 3, 4, 3) == doctest::Approx(along));
}

TEST_CASE("pgm round trip and ascii parsing") {
  const fs::path dir = fresh_dir("pgm");
  const GrayImage img = disk_image(16, 5.0);
  write_pgm(img, (dir / "disk.pgm").string());
  const GrayImage back = read_pgm((dir / "disk.pgm").string());
  CHECK(back.width == img.width);
  CHECK(back.height == img.height);
  CHECK(back.pixels == img.pixels);

  std::ofstream ascii(dir / "ascii.pgm");
  ascii << "P2\n# a comment\n2 2\n255\n0 128\n# mid\n 255 64\n";
  ascii.close();
  const GrayImage a = read_pgm((dir / "ascii.pgm").string());
  CHECK(a.pixels == std::vector<std::uint8_t>{0, 128, 255, 64});

  CHECK_THROWS_AS(read_pgm((dir / "missing.pgm").string()), IoError);
}

TEST_CASE("graph text and json files") {
  const fs::path dir = fresh_dir("graphio");
  const Graph g = helpers::nicholson();
  write_graph_text_file(g, (dir / "nich.txt").string());
  const Graph back = read_graph_file((dir / "nich.txt").string());
  CHECK(back.vertex_count() == 9);
  CHECK(back.edge_count() == 13);
  for (int j = 0; j < 13; ++j) CHECK(back.edge(j).weight == g.edge(j).weight);

  std::ofstream json(dir / "tiny.json");
  json << R"({"n": 3, "edges": [[1,2,1.5],[2,3,2.5]]})";
  json.close();
  const Graph jg = read_graph_file((dir / "tiny.json").string());
  CHECK(jg.vertex_count() == 3);
  CHECK(jg.edge(1).weight == 2.5);

  std::ofstream bad(dir / "bad.txt");
  bad << "1 2\n";
  bad.close();
  CHECK_THROWS_AS(read_graph_file((dir / "bad.txt").string()), IoError);
}

TEST_CASE("experiment on a graph file with the exact solver has zero gap") {
  const fs::path dir = fresh_dir("exp_lars");
  write_graph_text_file(helpers::nicholson(), (dir / "g.txt").string());

  ExperimentSpec spec;
  spec.solver = SolverKind::Lars;
  spec.graph_path = (dir / "g.txt").string();
  spec.source = 1;
  spec.target = 9;
  spec.out_dir = (dir / "out").string();
  const ExperimentResult res = run_experiment(spec);

  CHECK(res.rel_gap == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(res.length == doctest::Approx(8.0));
  CHECK(fs::exists(res.trace_file));
  CHECK(fs::exists(res.path_file));
  CHECK(fs::exists(res.summary_file));

  std::ifstream summary(res.summary_file);
  nlohmann::json doc;
  summary >> doc;
  for (const char* key :
       {"solver", "length", "oracle_length", "rel_gap", "iterations", "wall_ms", "seed"})
    CHECK(doc.contains(key));
  CHECK(doc["solver"] == "lars");

  std::ifstream path_file(res.path_file);
  std::string line;
  std::getline(path_file, line);  // the length header
  std::getline(path_file, line);
  CHECK(line == "1 2 3 6 9");
}

TEST_CASE("beta sample export covers the whole path down to zero") {
  const Graph g = helpers::nicholson();
  const LarsTrace trace = lars_path(g, 0, 8);
  std::ostringstream out;
  write_beta_samples_csv(g, trace, 50, out);

  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("lambda,e1_2,", 0) == 0);

  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    REQUIRE(row.size() == 1u + g.edge_count());
    rows.push_back(row);
  }
  REQUIRE(rows.size() >= 50);
  CHECK(rows.front()[0] == doctest::Approx(0.5));  // grid starts at lambda_1
  CHECK(rows.back()[0] == 0.0);
  for (std::size_t r = 1; r < rows.size(); ++r) CHECK(rows[r][0] < rows[r - 1][0]);

  double l1_at_zero = 0.0;
  for (std::size_t j = 1; j < rows.back().size(); ++j)
    l1_at_zero += std::fabs(rows.back()[j]);
  CHECK(l1_at_zero == doctest::Approx(8.0));
  for (double cell : rows.front()) CHECK(cell <= 0.5);  // beta(lambda_1) = 0
}

TEST_CASE("experiment on a seeded random graph converges within one percent") {
  ExperimentSpec spec;
  spec.solver = SolverKind::Admm;
  spec.random_graph = RandomGraphParams{60, 140, 10.0, 20.0};
  spec.seed = 3;
  spec.admm.max_iter = 30000;
  spec.out_dir = fresh_dir("exp_admm").string();
  const ExperimentResult res = run_experiment(spec);
  CHECK(res.rel_gap <= 0.01);
}

TEST_CASE("experiment without a seed rejects random sources") {
  ExperimentSpec spec;
  spec.solver = SolverKind::Dijkstra;
  spec.random_graph = RandomGraphParams{10, 15, 1.0, 2.0};
  CHECK_THROWS_AS(run_experiment(spec), Error);
}

TEST_CASE("overlay differs from the input only on path pixels") {
  const fs::path dir = fresh_dir("exp_overlay");
  const GrayImage img = disk_image(24, 8.0);
  write_pgm(img, (dir / "disk.pgm").string());

  ExperimentSpec spec;
  spec.solver = SolverKind::Dijkstra;
  spec.image_path = (dir / "disk.pgm").string();
  spec.source_pixel = {{4, 12}};
  spec.target_pixel = {{20, 12}};
  spec.out_dir = (dir / "out").string();
  const ExperimentResult res = run_experiment(spec);

  const GrayImage overlay = read_pgm(res.overlay_file);
  const ScissorsGraph sg = scissors_graph(img);
  std::set<int> on_path;
  for (Vertex v : res.path.path.vertex_sequence(sg.graph)) on_path.insert(v);
  for (int v = 0; v < sg.graph.vertex_count(); ++v) {
    const auto [r, c] = sg.pixel_of(v);
    if (on_path.count(v))
      CHECK(overlay.at(r, c) == 0);
    else
      CHECK(overlay.at(r, c) == img.at(r, c));
  }
}
