#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lassopaths/dijkstra.hpp"
#include "oracles.hpp"

using namespace lassopaths;

TEST_CASE("dijkstra distances on the nicholson graph match brute force") {
  const Graph g = helpers::nicholson();
  const DistanceMap dm = dijkstra(g, 0);
  for (Vertex v = 1; v < g.vertex_count(); ++v) {
    const auto bf = oracles::brute_force_shortest(g, 0, v);
    CHECK(dm.dist[v] == doctest::Approx(bf.best).epsilon(1e-14));
  }
  CHECK(dm.dist[1] == doctest::Approx(3.0));
  CHECK(dm.dist[2] == doctest::Approx(4.0));
  CHECK(dm.dist[5] == doctest::Approx(6.0));
  CHECK(dm.dist[8] == doctest::Approx(8.0));
}

TEST_CASE("dijkstra trivial cases") {
  const Graph single = build_graph_1based({{1, 2, 5.0}});
  CHECK(dijkstra(single, 0).dist[1] == doctest::Approx(5.0));
  CHECK(dijkstra(single, 1, 1).dist[1] == 0.0);
  CHECK_THROWS_AS(dijkstra(single, 7), VertexOutOfRangeError);

  const PathResult self = shortest_path(single, 0, 0);
  CHECK(self.length == 0.0);
  CHECK(self.path.edge_ids.empty());
}

TEST_CASE("shortest path reconstruction") {
  const Graph g = helpers::nicholson();
  const PathResult res = shortest_path(g, 0, 8);
  CHECK(res.length == doctest::Approx(8.0));
  CHECK(res.path.vertex_sequence(g) == std::vector<Vertex>{0, 1, 2, 5, 8});

  const Graph tri = build_graph_1based({{1, 2, 1.0}, {2, 3, 1.0}, {1, 3, 3.0}});
  const PathResult tp = shortest_path(tri, 0, 2);
  CHECK(tp.length == doctest::Approx(2.0));
  CHECK(tp.path.vertex_sequence(tri) == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("shortest path equals exhaustive search on small random graphs") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Graph g = helpers::random_test_graph(8, 14, seed);
    for (auto [s, t] : {std::pair<int, int>{0, 7}, {2, 5}}) {
      const PathResult res = shortest_path(g, s, t);
      const auto bf = oracles::brute_force_shortest(g, s, t);
      CHECK(res.length == doctest::Approx(bf.best).epsilon(1e-13));
    }
  }
}

TEST_CASE("dijkstra matches bellman-ford on larger random graphs") {
  for (std::uint64_t seed : {21ULL, 22ULL, 23ULL}) {
    const Graph g = helpers::random_test_graph(150, 400, seed);
    const DistanceMap dm = dijkstra(g, 3);
    const Vec bf = oracles::bellman_ford(g, 3);
    for (Vertex v = 0; v < g.vertex_count(); ++v) CHECK(dm.dist[v] == bf[v]);
  }
}

TEST_CASE("uniqueness check accepts the nicholson graph and trees") {
  const Graph g = helpers::nicholson();
  CHECK(check_assumption_a1(g, 0, 8).satisfied);

  const Graph tree = build_graph_1based({{1, 2, 1.0}, {1, 3, 2.0}, {3, 4, 1.0}});
  CHECK(check_assumption_a1(tree, 0, 3).satisfied);
}

TEST_CASE("uniqueness check flags a symmetric cycle") {
  const Graph cycle =
      build_graph_1based({{1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}, {1, 4, 1.0}});
  const UniquenessReport rep = check_assumption_a1(cycle, 0, 2);
  CHECK_FALSE(rep.satisfied);
  CHECK(rep.violations == std::vector<Vertex>{0, 2});
}

TEST_CASE("uniqueness check agrees with exhaustive path counting") {
  for (std::uint64_t seed = 40; seed < 52; ++seed) {
    // integer weights make duplicated optima likely
    Graph base = gen_random_graph(7, 12, 1.0, 4.0, seed);
    std::vector<EdgeSpec> rounded;
    for (const Edge& e : base.edges())
      rounded.push_back({e.tail, e.head, std::floor(e.weight)});
    const Graph g = Graph::build(7, rounded);

    const Vertex s = 0, t = 6;
    bool unique_everywhere = true;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (v != s && oracles::brute_force_shortest(g, s, v).optimal_count > 1)
        unique_everywhere = false;
      if (v != t && oracles::brute_force_shortest(g, t, v).optimal_count > 1)
        unique_everywhere = false;
    }
    CHECK(check_assumption_a1(g, s, t).satisfied == unique_everywhere);
  }
}

TEST_CASE("settle order on the nicholson graph follows the known keys") {
  const Graph g = helpers::nicholson();
  const auto events = bidirectional_settle_order(g, 0, 8);

  REQUIRE(events.size() == 5);
  // first two: vertices 6 and 8 under the target root, tied at key 0.5
  CHECK(events[0].vertex == 5);
  CHECK(events[0].root == 8);
  CHECK(events[0].key == doctest::Approx(0.5));
  CHECK(events[1].vertex == 7);
  CHECK(events[1].root == 8);
  CHECK(events[1].key == doctest::Approx(0.5));
  // then vertex 2 under the source root at 1/3
  CHECK(events[2].vertex == 1);
  CHECK(events[2].root == 0);
  CHECK(events[2].key == doctest::Approx(1.0 / 3.0));
  // then vertices 3 (source side) and 5 (target side), tied at 0.2
  CHECK(events[3].vertex == 2);
  CHECK(events[3].root == 0);
  CHECK(events[3].key == doctest::Approx(0.2));
  CHECK(events[4].vertex == 4);
  CHECK(events[4].root == 8);
  CHECK(events[4].key == doctest::Approx(0.2));
}

TEST_CASE("settle order on a path graph picks the nearer root") {
  const Graph g = build_graph_1based({{1, 2, 2.0}, {2, 3, 5.0}});
  const auto events = bidirectional_settle_order(g, 0, 2);
  REQUIRE(events.size() == 1);
  CHECK(events[0].vertex == 1);
  CHECK(events[0].root == 0);  // key 1/2 beats 1/5

  const Graph two = build_graph_1based({{1, 2, 1.0}});
  CHECK(bidirectional_settle_order(two, 0, 1).empty());
}
