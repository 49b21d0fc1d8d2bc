#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lassopaths/dense.hpp"
#include "lassopaths/random_graph.hpp"
#include "lassopaths/sparse.hpp"
#include "oracles.hpp"

using namespace lassopaths;

TEST_CASE("spmv identity pattern") {
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < 4; ++i) entries.push_back({i, i, 1.0});
  const SparseMatrix m(4, 4, entries);
  const Vec x{1.0, -2.0, 3.0, 0.5};
  CHECK(m.multiply(x) == x);
  CHECK(m.multiply_transpose(x) == x);
}

TEST_CASE("spmv against a hand product") {
  // D of the path graph 1-2-3 applied to (1,1)
  const SparseMatrix d(3, 2,
                       {{0, 0, 1.0}, {1, 0, -1.0}, {1, 1, 1.0}, {2, 1, -1.0}});
  CHECK(d.multiply(Vec{1.0, 1.0}) == Vec{1.0, 0.0, -1.0});
}

TEST_CASE("spmv against a dense oracle, both orientations") {
  Rng rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Triplet> entries;
    DenseMatrix dense(5, 7);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 7; ++j)
        if (rng.uniform01() < 0.4) {
          const double v = rng.uniform(-2.0, 2.0);
          entries.push_back({i, j, v});
          dense(i, j) = v;
        }
    const SparseMatrix sparse(5, 7, entries);
    Vec x(7), z(5);
    for (double& v : x) v = rng.uniform(-1.0, 1.0);
    for (double& v : z) v = rng.uniform(-1.0, 1.0);

    const Vec got = sparse.multiply(x);
    const Vec want = dense.matvec(x);
    for (int i = 0; i < 5; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-14));

    const Vec gott = sparse.multiply_transpose(z);
    const Vec wantt = dense.matvec_transpose(z);
    for (int j = 0; j < 7; ++j)
      CHECK(gott[j] == doctest::Approx(wantt[j]).epsilon(1e-14));
  }
  CHECK_THROWS_AS(SparseMatrix(2, 2, {{0, 0, 1.0}, {0, 0, 2.0}}),
                  DimensionMismatchError);
}

TEST_CASE("conjugate gradient on tiny systems") {
  LinearOperator identity{3, [](std::span<const double> x, std::span<double> y) {
                            for (std::size_t i = 0; i < 3; ++i) y[i] = x[i];
                          }};
  const Vec b{1.0, 2.0, -3.0};
  const Vec x0(3, 0.0);
  const CgResult r = conjugate_gradient(identity, b, x0, 1e-12, 10);
  CHECK(r.converged);
  CHECK(r.iterations <= 1);
  for (int i = 0; i < 3; ++i) CHECK(r.x[i] == doctest::Approx(b[i]));

  LinearOperator diag{3, [](std::span<const double> x, std::span<double> y) {
                        y[0] = x[0];
                        y[1] = 2.0 * x[1];
                        y[2] = 3.0 * x[2];
                      }};
  const CgResult r2 = conjugate_gradient(diag, Vec{1.0, 2.0, 3.0}, x0, 1e-12, 10);
  CHECK(r2.converged);
  CHECK(r2.iterations <= 3);
  for (int i = 0; i < 3; ++i) CHECK(r2.x[i] == doctest::Approx(1.0));

  const CgResult zero = conjugate_gradient(diag, Vec{0.0, 0.0, 0.0}, x0, 1e-12, 10);
  CHECK(zero.converged);
  for (double v : zero.x) CHECK(v == 0.0);
}

TEST_CASE("conjugate gradient matches a cholesky solve on a graph operator") {
  const Graph g = helpers::nicholson();
  const SparseMatrix q = weighted_incidence(g);
  const double rho = 0.5;
  const int n = g.vertex_count();

  DenseMatrix a(n, n);
  for (std::size_t j = 0; j < q.cols(); ++j) {
    auto [rows, vals] = q.column(j);
    for (std::size_t p = 0; p < rows.size(); ++p)
      for (std::size_t r = 0; r < rows.size(); ++r)
        a(rows[p], rows[r]) += vals[p] * vals[r];
  }
  for (int i = 0; i < n; ++i) a(i, i) += rho;

  LinearOperator op{static_cast<std::size_t>(n),
                    [&](std::span<const double> x, std::span<double> y) {
                      const Vec qt = q.multiply_transpose(x);
                      const Vec qq = q.multiply(qt);
                      for (int i = 0; i < n; ++i) y[i] = qq[i] + rho * x[i];
                    }};

  Rng rng(3);
  Vec b(n);
  for (double& v : b) v = rng.uniform(-1.0, 1.0);
  const CgResult cg = conjugate_gradient(op, b, Vec(n, 0.0), 1e-12, 200);
  CHECK(cg.converged);
  CHECK(cg.relative_residual <= 1e-12);

  const Vec direct = SpdFactor(a).solve(b);
  for (int i = 0; i < n; ++i)
    CHECK(cg.x[i] == doctest::Approx(direct[i]).epsilon(1e-8));
}

TEST_CASE("least squares basics") {
  DenseMatrix eye(3, 3);
  for (int i = 0; i < 3; ++i) eye(i, i) = 1.0;
  const Vec b{1.0, 2.0, 3.0};
  const Vec x = least_squares_solve(eye, b);
  for (int i = 0; i < 3; ++i) CHECK(x[i] == doctest::Approx(b[i]));

  DenseMatrix ones(2, 1);
  ones(0, 0) = 1.0;
  ones(1, 0) = 1.0;
  const Vec mean = least_squares_solve(ones, Vec{1.0, 3.0});
  CHECK(mean[0] == doctest::Approx(2.0));
}

TEST_CASE("least squares on rank-deficient systems is minimum norm") {
  Rng rng(41);
  for (int trial = 0; trial < 8; ++trial) {
    // 6x4 with column 3 = column 0 + column 1 (rank <= 3)
    DenseMatrix a(6, 4);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < 6; ++i) a(i, 3) = a(i, 0) + a(i, 1);
    Vec b(6);
    for (double& v : b) v = rng.uniform(-1.0, 1.0);

    const Vec got = least_squares_solve(a, b);
    const DenseMatrix pinv = oracles::svd_pseudo_inverse(a);
    const Vec want = pinv.matvec(b);
    for (int j = 0; j < 4; ++j) CHECK(got[j] == doctest::Approx(want[j]).epsilon(1e-10));

    // residual orthogonal to the column space
    const Vec r = oracles::transpose(a).matvec(lassopaths::sub(a.matvec(got), b));
    for (double v : r) CHECK(std::fabs(v) < 1e-8);
  }
}

TEST_CASE("cholesky factor solves and rejects indefinite input") {
  DenseMatrix eye(2, 2);
  eye(0, 0) = eye(1, 1) = 1.0;
  const Vec b{0.5, -2.0};
  const Vec x0 = SpdFactor(eye).solve(b);
  CHECK(x0[0] == doctest::Approx(0.5));
  CHECK(x0[1] == doctest::Approx(-2.0));

  DenseMatrix a(2, 2);
  a(0, 0) = 4.0;
  a(0, 1) = a(1, 0) = 2.0;
  a(1, 1) = 3.0;
  const Vec x = SpdFactor(a).solve(Vec{2.0, 1.0});
  CHECK(x[0] == doctest::Approx(0.5));
  CHECK(x[1] == doctest::Approx(0.0));

  DenseMatrix bad(2, 2);
  bad(0, 0) = 1.0;
  bad(0, 1) = bad(1, 0) = 3.0;
  bad(1, 1) = 1.0;
  CHECK_THROWS_AS(SpdFactor{bad}, NotPositiveDefiniteError);
}
