#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lassopaths/errors.hpp"
#include "lassopaths/vec.hpp"

namespace lassopaths {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Row-compressed sparse matrix with a lazily materialized transpose index.
/// Both M x and M^T x run in O(nnz); the transpose index is built on first use
/// since the solvers apply both products every iteration.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  Vec multiply(std::span<const double> x) const;
  Vec multiply_transpose(std::span<const double> x) const;
  void multiply_into(std::span<const double> x, std::span<double> y) const;
  void multiply_transpose_into(std::span<const double> x, std::span<double> y) const;

  /// Dot product of column j with a dense vector, via the transpose index.
  double column_dot(std::size_t j, std::span<const double> x) const;

  /// (row indices, values) of column j.
  std::pair<std::span<const std::size_t>, std::span<const double>> column(
      std::size_t j) const;

  void ensure_transpose() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;

  // transpose view (column-compressed), built on demand
  mutable bool transpose_built_ = false;
  mutable std::vector<std::size_t> colt_ptr_;
  mutable std::vector<std::size_t> rowt_idx_;
  mutable std::vector<double> valuest_;
};

inline Vec spmv(const SparseMatrix& m, std::span<const double> x, bool transpose = false) {
  return transpose ? m.multiply_transpose(x) : m.multiply(x);
}

/// A symmetric operator given by its action x -> A x.
struct LinearOperator {
  std::size_t dim = 0;
  std::function<void(std::span<const double>, std::span<double>)> apply;
};

struct CgResult {
  Vec x;
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Plain conjugate gradient for SPD operators. Convergence is declared on the
/// true residual |Ax-b|/|b|, re-checked after the recursive residual passes.
CgResult conjugate_gradient(const LinearOperator& a, std::span<const double> b,
                            std::span<const double> x0, double tol, int max_iter);

}  // namespace lassopaths
