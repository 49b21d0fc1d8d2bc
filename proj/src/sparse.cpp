#include "lassopaths/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace lassopaths {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols,
                           std::vector<Triplet> entries)
    : rows_(rows), cols_(cols) {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  row_ptr_.assign(rows_ + 1, 0);
  col_idx_.reserve(entries.size());
  values_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Triplet& t = entries[i];
    if (t.row >= rows_ || t.col >= cols_)
      throw DimensionMismatchError("sparse entry out of range");
    if (i > 0 && entries[i - 1].row == t.row && entries[i - 1].col == t.col)
      throw DimensionMismatchError("duplicate sparse entry");
    row_ptr_[t.row + 1]++;
    col_idx_.push_back(t.col);
    values_.push_back(t.value);
  }
  for (std::size_t r = 0; r < rows_; ++r) row_ptr_[r + 1] += row_ptr_[r];
}

void SparseMatrix::ensure_transpose() const {
  if (transpose_built_) return;
  colt_ptr_.assign(cols_ + 1, 0);
  rowt_idx_.assign(values_.size(), 0);
  valuest_.assign(values_.size(), 0.0);
  for (std::size_t c : col_idx_) colt_ptr_[c + 1]++;
  for (std::size_t c = 0; c < cols_; ++c) colt_ptr_[c + 1] += colt_ptr_[c];
  std::vector<std::size_t> cursor(colt_ptr_.begin(), colt_ptr_.end() - 1);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      std::size_t pos = cursor[col_idx_[k]]++;
      rowt_idx_[pos] = r;
      valuest_[pos] = values_[k];
    }
  }
  transpose_built_ = true;
}

void SparseMatrix::multiply_into(std::span<const double> x, std::span<double> y) const {
  if (x.size() != cols_ || y.size() != rows_)
    throw DimensionMismatchError("spmv input size");
  for (std::size_t r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      acc += values_[k] * x[col_idx_[k]];
    y[r] = acc;
  }
}

void SparseMatrix::multiply_transpose_into(std::span<const double> x,
                                           std::span<double> y) const {
  if (x.size() != rows_ || y.size() != cols_)
    throw DimensionMismatchError("spmv transpose input size");
  ensure_transpose();
  for (std::size_t c = 0; c < cols_; ++c) {
    double acc = 0.0;
    for (std::size_t k = colt_ptr_[c]; k < colt_ptr_[c + 1]; ++k)
      acc += valuest_[k] * x[rowt_idx_[k]];
    y[c] = acc;
  }
}

Vec SparseMatrix::multiply(std::span<const double> x) const {
  Vec y(rows_, 0.0);
  multiply_into(x, y);
  return y;
}

Vec SparseMatrix::multiply_transpose(std::span<const double> x) const {
  Vec y(cols_, 0.0);
  multiply_transpose_into(x, y);
  return y;
}

std::pair<std::span<const std::size_t>, std::span<const double>> SparseMatrix::column(
    std::size_t j) const {
  if (j >= cols_) throw DimensionMismatchError("column index out of range");
  ensure_transpose();
  const std::size_t lo = colt_ptr_[j];
  const std::size_t hi = colt_ptr_[j + 1];
  return {std::span<const std::size_t>(rowt_idx_.data() + lo, hi - lo),
          std::span<const double>(valuest_.data() + lo, hi - lo)};
}

double SparseMatrix::column_dot(std::size_t j, std::span<const double> x) const {
  if (x.size() != rows_) throw DimensionMismatchError("column_dot input size");
  ensure_transpose();
  double acc = 0.0;
  for (std::size_t k = colt_ptr_[j]; k < colt_ptr_[j + 1]; ++k)
    acc += valuest_[k] * x[rowt_idx_[k]];
  return acc;
}

CgResult conjugate_gradient(const LinearOperator& a, std::span<const double> b,
                            std::span<const double> x0, double tol, int max_iter) {
  const std::size_t n = a.dim;
  if (b.size() != n || x0.size() != n)
    throw DimensionMismatchError("conjugate_gradient size");

  CgResult res;
  res.x.assign(x0.begin(), x0.end());
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    std::fill(res.x.begin(), res.x.end(), 0.0);
    res.converged = true;
    return res;
  }

  Vec r(n), ax(n), p(n), ap(n);
  a.apply(res.x, ax);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ax[i];
  p = r;
  double rr = dot(r, r);
  res.relative_residual = std::sqrt(rr) / bnorm;
  if (res.relative_residual <= tol) {
    res.converged = true;
    return res;
  }

  for (int it = 0; it < max_iter; ++it) {
    a.apply(p, ap);
    const double pap = dot(p, ap);
    if (pap <= 0.0) break;  // operator not SPD along p; give up
    const double alpha = rr / pap;
    axpy(alpha, p, res.x);
    axpy(-alpha, ap, r);
    const double rr_next = dot(r, r);
    res.iterations = it + 1;
    if (std::sqrt(rr_next) / bnorm <= tol) {
      // confirm on the true residual before declaring victory
      a.apply(res.x, ax);
      double true_rr = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = b[i] - ax[i];
        true_rr += d * d;
        r[i] = d;
      }
      res.relative_residual = std::sqrt(true_rr) / bnorm;
      if (res.relative_residual <= tol) {
        res.converged = true;
        return res;
      }
      rr = true_rr;
      p = r;  // restart direction from the exact residual
      continue;
    }
    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  res.relative_residual = std::sqrt(rr) / bnorm;
  res.converged = res.relative_residual <= tol;
  return res;
}

}  // namespace lassopaths
