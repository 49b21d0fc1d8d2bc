#include "lassopaths/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lassopaths {

namespace {

// next whitespace-separated token, skipping '#' comment lines
std::string next_token(std::istream& in) {
  std::string tok;
  while (in) {
    const int c = in.peek();
    if (c == EOF) break;
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    if (c == '#') {
      std::string line;
      std::getline(in, line);
      continue;
    }
    in >> tok;
    return tok;
  }
  throw IoError("unexpected end of image header");
}

int header_int(std::istream& in) {
  const std::string tok = next_token(in);
  try {
    return std::stoi(tok);
  } catch (const std::exception&) {
    throw IoError("bad integer in image header: " + tok);
  }
}

}  // namespace

GrayImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image: " + path);

  std::string magic = next_token(in);
  if (magic != "P2" && magic != "P5") throw IoError("unsupported image format " + magic);
  GrayImage img;
  img.width = header_int(in);
  img.height = header_int(in);
  const int maxval = header_int(in);
  if (img.width <= 0 || img.height <= 0) throw IoError("bad image dimensions");
  if (maxval <= 0 || maxval > 255) throw IoError("only 8-bit images are supported");

  const std::size_t count = static_cast<std::size_t>(img.width) * img.height;
  img.pixels.resize(count);
  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      const int v = header_int(in);
      if (v < 0 || v > maxval) throw IoError("pixel out of range");
      img.pixels[i] = static_cast<std::uint8_t>(v);
    }
  } else {
    in.get();  // the single whitespace after maxval
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(count));
    if (in.gcount() != static_cast<std::streamsize>(count))
      throw IoError("truncated image data");
  }
  return img;
}

void write_pgm(const GrayImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write image: " + path);
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
  if (!out) throw IoError("short write on image: " + path);
}

ScissorsWeights::ScissorsWeights(const GrayImage& img)
    : width_(img.width), height_(img.height), grad_(img.pixels.size(), 0.0) {
  auto clamped = [&](int r, int c) {
    r = std::clamp(r, 0, height_ - 1);
    c = std::clamp(c, 0, width_ - 1);
    return static_cast<double>(img.at(r, c));
  };
  double maxg = 0.0;
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      const double gx = clamped(r - 1, c + 1) + 2.0 * clamped(r, c + 1) +
                        clamped(r + 1, c + 1) - clamped(r - 1, c - 1) -
                        2.0 * clamped(r, c - 1) - clamped(r + 1, c - 1);
      const double gy = clamped(r + 1, c - 1) + 2.0 * clamped(r + 1, c) +
                        clamped(r + 1, c + 1) - clamped(r - 1, c - 1) -
                        2.0 * clamped(r - 1, c) - clamped(r - 1, c + 1);
      const double g = std::hypot(gx, gy);
      grad_[r * width_ + c] = g;
      maxg = std::max(maxg, g);
    }
  }
  if (maxg > 0.0)
    for (double& g : grad_) g /= maxg;
}

double ScissorsWeights::weight(int r1, int c1, int r2, int c2) const {
  const int dr = std::abs(r1 - r2);
  const int dc = std::abs(c1 - c2);
  if (std::max(dr, dc) != 1) throw NotNeighborsError("pixels are not 8-neighbors");
  if (r1 < 0 || r1 >= height_ || c1 < 0 || c1 >= width_ || r2 < 0 || r2 >= height_ ||
      c2 < 0 || c2 >= width_)
    throw NotNeighborsError("pixel outside the image");
  const double d = (dr + dc == 2) ? std::sqrt(2.0) : 1.0;
  const double g = 0.5 * (gradient(r1, c1) + gradient(r2, c2));
  return d * (kEps + 1.0 - g);
}

double edge_weight_from_gradient(const GrayImage& img, int r1, int c1, int r2, int c2) {
  return ScissorsWeights(img).weight(r1, c1, r2, c2);
}

ScissorsGraph scissors_graph(const GrayImage& img) {
  if (img.width < 2 || img.height < 2)
    throw ImageTooSmallError("need at least a 2x2 image");

  const ScissorsWeights weights(img);
  ScissorsGraph sg;
  sg.width = img.width;
  sg.height = img.height;

  // forward offsets cover each undirected neighbor pair exactly once
  constexpr int kOffsets[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};
  std::vector<EdgeSpec> edges;
  edges.reserve(4u * img.width * img.height);
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      for (const auto& off : kOffsets) {
        const int nr = r + off[0];
        const int nc = c + off[1];
        if (nr >= img.height || nc < 0 || nc >= img.width) continue;
        edges.push_back({r * img.width + c, nr * img.width + nc,
                         weights.weight(r, c, nr, nc)});
      }
    }
  }
  sg.graph = Graph::build(img.width * img.height, edges);
  return sg;
}

}  // namespace lassopaths
