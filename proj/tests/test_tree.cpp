#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lassopaths/random_graph.hpp"
#include "lassopaths/tree.hpp"
#include "oracles.hpp"

using namespace lassopaths;

namespace {

// random labeled tree as a RootedTree, edges oriented small->large
RootedTree random_rooted_tree(int n, std::uint64_t seed) {
  const Graph g = gen_random_graph(n, n - 1, 1.0, 2.0, seed);
  std::vector<TreeEdge> edges;
  for (const Edge& e : g.edges()) edges.push_back({e.tail, e.head, e.weight});
  return RootedTree::build(0, edges);
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::fabs(a(i, j) - b(i, j)));
  return worst;
}

}  // namespace

TEST_CASE("path matrix of tiny trees") {
  // single edge oriented (0,1), root 0: the path 1 -> 0 runs against it
  const RootedTree single = RootedTree::build(0, {{0, 1, 1.0}});
  const DenseMatrix p1 = tree_path_matrix(single);
  CHECK(p1.rows() == 1);
  CHECK(p1(0, 0) == -1.0);

  // star at 0 with edges (0,1), (0,2): each leaf path is one reversed edge
  const RootedTree star = RootedTree::build(0, {{0, 1, 1.0}, {0, 2, 1.0}});
  const DenseMatrix p2 = tree_path_matrix(star);
  CHECK(p2(0, 0) == -1.0);
  CHECK(p2(1, 1) == -1.0);
  CHECK(p2(0, 1) == 0.0);
  CHECK(p2(1, 0) == 0.0);

  // chain 0-1-2: the column of vertex 2 traverses both edges backwards
  const RootedTree chain = RootedTree::build(0, {{0, 1, 1.0}, {1, 2, 1.0}});
  const DenseMatrix p3 = tree_path_matrix(chain);
  CHECK(p3(0, 1) == -1.0);
  CHECK(p3(1, 1) == -1.0);
}

TEST_CASE("tree rejects non-trees") {
  CHECK_THROWS_AS(RootedTree::build(0, {{0, 1, 1.0}, {0, 1, 1.0}}), NotATreeError);
  CHECK_THROWS_AS(RootedTree::build(0, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}),
                  NotATreeError);
  CHECK_THROWS_AS(RootedTree::build(0, {{1, 2, 1.0}}), NotATreeError);
}

TEST_CASE("pseudo-inverse of a single edge") {
  const RootedTree t = RootedTree::build(0, {{0, 1, 1.0}});
  const DenseMatrix pinv = tree_incidence_pseudoinverse(t);
  CHECK(pinv.rows() == 1);
  CHECK(pinv.cols() == 2);
  CHECK(pinv(0, 0) == doctest::Approx(0.5));
  CHECK(pinv(0, 1) == doctest::Approx(-0.5));
}

TEST_CASE("pseudo-inverse of a 3-chain matches the svd oracle") {
  const RootedTree t = RootedTree::build(0, {{0, 1, 1.0}, {1, 2, 1.0}});
  const DenseMatrix got = tree_incidence_pseudoinverse(t);
  const DenseMatrix want = oracles::svd_pseudo_inverse(tree_incidence_matrix(t));
  CHECK(max_abs_diff(got, want) < 1e-10);
}

TEST_CASE("moore-penrose identities hold on random trees") {
  for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
    const RootedTree t = random_rooted_tree(8, seed);
    const DenseMatrix d = tree_incidence_matrix(t);
    const DenseMatrix pinv = tree_incidence_pseudoinverse(t);

    const DenseMatrix dpd = oracles::multiply(oracles::multiply(d, pinv), d);
    CHECK(max_abs_diff(dpd, d) < 1e-10);
    const DenseMatrix pdp = oracles::multiply(oracles::multiply(pinv, d), pinv);
    CHECK(max_abs_diff(pdp, pinv) < 1e-10);

    const DenseMatrix dp = oracles::multiply(d, pinv);
    CHECK(max_abs_diff(dp, oracles::transpose(dp)) < 1e-10);
    const DenseMatrix pd = oracles::multiply(pinv, d);
    CHECK(max_abs_diff(pd, oracles::transpose(pd)) < 1e-10);
  }
}

TEST_CASE("pseudo-inverse formula agrees with the svd oracle on random trees") {
  for (int n : {2, 5, 9, 17}) {
    const RootedTree t = random_rooted_tree(n, 100 + n);
    const DenseMatrix got = tree_incidence_pseudoinverse(t);
    const DenseMatrix want = oracles::svd_pseudo_inverse(tree_incidence_matrix(t));
    CHECK(max_abs_diff(got, want) < 1e-10);
  }
}
