#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

// Small dense-vector helpers shared by the solvers. All loops use a fixed
// sequential accumulation order so repeated runs produce identical traces.

namespace lassopaths {

using Vec = std::vector<double>;

inline double dot(std::span<const double> x, std::span<const double> y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

inline double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

inline double norm1(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += std::fabs(v);
  return acc;
}

inline double norm_inf(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::fabs(v));
  return m;
}

// y += alpha * x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale(std::span<double> x, double alpha) {
  for (double& v : x) v *= alpha;
}

inline Vec sub(std::span<const double> x, std::span<const double> y) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

}  // namespace lassopaths
