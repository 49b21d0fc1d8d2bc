#include "lassopaths/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lassopaths {

Vec DenseMatrix::matvec(std::span<const double> x) const {
  if (x.size() != cols_) throw DimensionMismatchError("dense matvec size");
  Vec y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) y[i] = dot(row(i), x);
  return y;
}

Vec DenseMatrix::matvec_transpose(std::span<const double> x) const {
  if (x.size() != rows_) throw DimensionMismatchError("dense matvec_transpose size");
  Vec y(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) axpy(x[i], row(i), y);
  return y;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

HouseholderQr::HouseholderQr(DenseMatrix a) : qr_(std::move(a)) {
  const std::size_t m = qr_.rows();
  const std::size_t k = qr_.cols();
  const std::size_t steps = std::min(m, k);
  beta_.assign(steps, 0.0);
  perm_.resize(k);
  for (std::size_t j = 0; j < k; ++j) perm_[j] = j;

  Vec colnorm(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += qr_(i, j) * qr_(i, j);
    colnorm[j] = s;
  }

  double pivot_threshold = 0.0;
  for (std::size_t j = 0; j < steps; ++j) {
    // pivot on the largest remaining column
    std::size_t p = j;
    for (std::size_t q = j + 1; q < k; ++q)
      if (colnorm[q] > colnorm[p]) p = q;
    if (p != j) {
      for (std::size_t i = 0; i < m; ++i) std::swap(qr_(i, j), qr_(i, p));
      std::swap(colnorm[j], colnorm[p]);
      std::swap(perm_[j], perm_[p]);
    }

    // reflector on column j, rows j..m
    double sigma = 0.0;
    for (std::size_t i = j + 1; i < m; ++i) sigma += qr_(i, j) * qr_(i, j);
    double x0 = qr_(j, j);
    if (sigma == 0.0 && x0 == 0.0) {
      beta_[j] = 0.0;
      continue;
    }
    double mu = std::sqrt(x0 * x0 + sigma);
    double alpha = (x0 <= 0.0) ? mu : -mu;
    double v0 = x0 - alpha;
    double beta = v0 * v0 / (v0 * v0 + sigma) * 2.0;
    for (std::size_t i = j + 1; i < m; ++i) qr_(i, j) /= v0;
    qr_(j, j) = alpha;
    beta_[j] = beta;

    // apply to trailing columns
    for (std::size_t c = j + 1; c < k; ++c) {
      double w = qr_(j, c);
      for (std::size_t i = j + 1; i < m; ++i) w += qr_(i, j) * qr_(i, c);
      w *= beta;
      qr_(j, c) -= w;
      for (std::size_t i = j + 1; i < m; ++i) qr_(i, c) -= w * qr_(i, j);
    }
    for (std::size_t c = j + 1; c < k; ++c)
      colnorm[c] = std::max(0.0, colnorm[c] - qr_(j, c) * qr_(j, c));

    if (j == 0)
      pivot_threshold = std::fabs(qr_(0, 0)) *
                        static_cast<double>(std::max(m, k)) *
                        std::numeric_limits<double>::epsilon();
  }

  rank_ = 0;
  for (std::size_t j = 0; j < steps; ++j)
    if (std::fabs(qr_(j, j)) > pivot_threshold) ++rank_;

  if (rank_ < k && rank_ > 0) {
    // annihilate R[0..r, r..k) from the right (trapezoidal -> triangular)
    const std::size_t r = rank_;
    const std::size_t tail = k - r;
    tz_z_.assign(r, Vec(tail, 0.0));
    tz_tau_.assign(r, 0.0);
    for (std::size_t i = r; i-- > 0;) {
      double sigma = 0.0;
      for (std::size_t t = 0; t < tail; ++t) sigma += qr_(i, r + t) * qr_(i, r + t);
      if (sigma == 0.0) continue;
      double x0 = qr_(i, i);
      double mu = std::sqrt(x0 * x0 + sigma);
      double alpha = (x0 <= 0.0) ? mu : -mu;
      double v0 = x0 - alpha;
      double tau = 2.0 * v0 * v0 / (v0 * v0 + sigma);
      Vec& z = tz_z_[i];
      for (std::size_t t = 0; t < tail; ++t) z[t] = qr_(i, r + t) / v0;
      tz_tau_[i] = tau;
      qr_(i, i) = alpha;
      for (std::size_t t = 0; t < tail; ++t) qr_(i, r + t) = 0.0;
      // rows above still carry tail mass
      for (std::size_t p = 0; p < i; ++p) {
        double w = qr_(p, i);
        for (std::size_t t = 0; t < tail; ++t) w += qr_(p, r + t) * z[t];
        w *= tau;
        qr_(p, i) -= w;
        for (std::size_t t = 0; t < tail; ++t) qr_(p, r + t) -= w * z[t];
      }
    }
  }
}

Vec HouseholderQr::apply_qt(std::span<const double> b) const {
  const std::size_t m = qr_.rows();
  Vec c(b.begin(), b.end());
  for (std::size_t j = 0; j < beta_.size(); ++j) {
    if (beta_[j] == 0.0) continue;
    double w = c[j];
    for (std::size_t i = j + 1; i < m; ++i) w += qr_(i, j) * c[i];
    w *= beta_[j];
    c[j] -= w;
    for (std::size_t i = j + 1; i < m; ++i) c[i] -= w * qr_(i, j);
  }
  return c;
}

Vec HouseholderQr::solve_min_norm(std::span<const double> b) const {
  const std::size_t k = qr_.cols();
  if (b.size() != qr_.rows()) throw DimensionMismatchError("least squares rhs size");
  const std::size_t r = rank_;
  Vec x(k, 0.0);
  if (r == 0) return x;

  Vec c = apply_qt(b);
  Vec z(k, 0.0);
  // back-substitution on the leading triangle
  for (std::size_t i = r; i-- > 0;) {
    double s = c[i];
    for (std::size_t j = i + 1; j < r; ++j) s -= qr_(i, j) * z[j];
    z[i] = s / qr_(i, i);
  }
  if (r < k) {
    // undo the trapezoidal reflectors to get the minimum-norm solution
    const std::size_t tail = k - r;
    for (std::size_t i = 0; i < r; ++i) {
      if (tz_tau_[i] == 0.0) continue;
      const Vec& zz = tz_z_[i];
      double w = z[i];
      for (std::size_t t = 0; t < tail; ++t) w += zz[t] * z[r + t];
      w *= tz_tau_[i];
      z[i] -= w;
      for (std::size_t t = 0; t < tail; ++t) z[r + t] -= w * zz[t];
    }
  }
  for (std::size_t j = 0; j < k; ++j) x[perm_[j]] = z[j];
  return x;
}

Vec HouseholderQr::solve_normal(std::span<const double> s) const {
  const std::size_t k = qr_.cols();
  if (s.size() != k) throw DimensionMismatchError("normal-equation rhs size");
  if (!full_column_rank())
    throw NumericalBreakdownError("normal-equation solve on rank-deficient system");
  // A P = Q R  =>  A^T A = P R^T R P^T
  Vec u(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) u[j] = s[perm_[j]];
  // forward solve R^T v = u
  for (std::size_t i = 0; i < k; ++i) {
    double acc = u[i];
    for (std::size_t j = 0; j < i; ++j) acc -= qr_(j, i) * u[j];
    u[i] = acc / qr_(i, i);
  }
  // back solve R w = v
  for (std::size_t i = k; i-- > 0;) {
    double acc = u[i];
    for (std::size_t j = i + 1; j < k; ++j) acc -= qr_(i, j) * u[j];
    u[i] = acc / qr_(i, i);
  }
  Vec w(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) w[perm_[j]] = u[j];
  return w;
}

Vec least_squares_solve(const DenseMatrix& a, std::span<const double> b) {
  return HouseholderQr(a).solve_min_norm(b);
}

SpdFactor::SpdFactor(const DenseMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionMismatchError("cholesky needs a square matrix");
  l_ = DenseMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a(i, j);
      for (std::size_t p = 0; p < j; ++p) s -= l_(i, p) * l_(j, p);
      if (i == j) {
        if (s <= 0.0) throw NotPositiveDefiniteError("nonpositive pivot in cholesky");
        l_(i, i) = std::sqrt(s);
      } else {
        l_(i, j) = s / l_(j, j);
      }
    }
  }
}

Vec SpdFactor::solve(std::span<const double> b) const {
  const std::size_t n = l_.rows();
  if (b.size() != n) throw DimensionMismatchError("cholesky solve rhs size");
  Vec x(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= l_(i, j) * x[j];
    x[i] = s / l_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= l_(j, i) * x[j];
    x[i] = s / l_(i, i);
  }
  return x;
}

}  // namespace lassopaths
