#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lassopaths/graph.hpp"

namespace lassopaths {

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major

  std::uint8_t at(int row, int col) const { return pixels[row * width + col]; }
  std::uint8_t& at(int row, int col) { return pixels[row * width + col]; }
};

GrayImage read_pgm(const std::string& path);  // P2 and P5, 8-bit
void write_pgm(const GrayImage& img, const std::string& path);  // P5

/// Sobel gradient magnitude normalized to [0, 1] over the whole image.
/// High gradient means a likely object boundary, hence a cheap edge.
class ScissorsWeights {
 public:
  explicit ScissorsWeights(const GrayImage& img);

  double gradient(int row, int col) const { return grad_[row * width_ + col]; }

  /// d * (eps + 1 - (G(p) + G(q)) / 2) with d = 1 for axis neighbors and
  /// sqrt(2) for diagonals.
  double weight(int r1, int c1, int r2, int c2) const;

  static constexpr double kEps = 0.01;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> grad_;
};

double edge_weight_from_gradient(const GrayImage& img, int r1, int c1, int r2, int c2);

struct ScissorsGraph {
  Graph graph;
  int width = 0;
  int height = 0;

  Vertex vertex_of(int row, int col) const { return row * width + col; }
  std::pair<int, int> pixel_of(Vertex v) const { return {v / width, v % width}; }
};

/// One vertex per pixel, edges to the 8-neighborhood, weights from the
/// gradient field. Needs at least a 2x2 image.
ScissorsGraph scissors_graph(const GrayImage& img);

}  // namespace lassopaths
