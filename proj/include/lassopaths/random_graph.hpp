#pragma once

#include <cstdint>
#include <random>

#include "lassopaths/graph.hpp"

namespace lassopaths {

/// mt19937_64 with hand-rolled output mappings. The standard distributions
/// differ between library implementations; these do not, so seeded runs are
/// reproducible byte for byte everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Unbiased integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

/// Connected simple graph with exactly m edges: a uniform random labeled
/// spanning tree first, then m - (n - 1) distinct extra pairs. Weights are
/// i.i.d. uniform on [w_min, w_max]. Deterministic in the seed.
Graph gen_random_graph(int n, int m, double w_min, double w_max, std::uint64_t seed);

}  // namespace lassopaths
