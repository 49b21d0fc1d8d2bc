#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lassopaths/errors.hpp"
#include "lassopaths/vec.hpp"

namespace lassopaths {

/// Row-major dense matrix. Used only for small objects: active-set systems,
/// tree path matrices, and the cached n-by-n solver operator.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  Vec matvec(std::span<const double> x) const;
  Vec matvec_transpose(std::span<const double> x) const;
  DenseMatrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Householder QR with column pivoting, plus the rank-revealing complete
/// orthogonal form used for minimum-norm solutions of rank-deficient systems.
class HouseholderQr {
 public:
  explicit HouseholderQr(DenseMatrix a);

  std::size_t rank() const { return rank_; }
  bool full_column_rank() const { return rank_ == qr_.cols(); }

  /// Minimum-norm x among the minimizers of |A x - b|_2.
  Vec solve_min_norm(std::span<const double> b) const;

  /// Solves (A^T A) w = s via the triangular factors. Requires full column rank.
  Vec solve_normal(std::span<const double> s) const;

 private:
  Vec apply_qt(std::span<const double> b) const;

  DenseMatrix qr_;             // R in the upper triangle, reflectors below
  Vec beta_;                   // Householder scalars
  std::vector<std::size_t> perm_;
  std::size_t rank_ = 0;
  // trapezoidal annihilation factors (rank-deficient path only)
  std::vector<Vec> tz_z_;
  Vec tz_tau_;
};

Vec least_squares_solve(const DenseMatrix& a, std::span<const double> b);

/// Cholesky factorization of a symmetric positive definite matrix,
/// computed once and reused across solves.
class SpdFactor {
 public:
  explicit SpdFactor(const DenseMatrix& a);

  Vec solve(std::span<const double> b) const;
  std::size_t dim() const { return l_.rows(); }

 private:
  DenseMatrix l_;  // lower triangle
};

inline SpdFactor spd_factorize(const DenseMatrix& a) { return SpdFactor(a); }
inline Vec spd_solve(const SpdFactor& f, std::span<const double> b) { return f.solve(b); }

}  // namespace lassopaths
