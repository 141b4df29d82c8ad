#pragma once

#include "ksc/types.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace ksc {

using Rgb = std::array<std::uint8_t, 3>;

/// 8-bit RGB image, pixels in row-major order.
struct LabeledImage {
  Index width = 0;
  Index height = 0;
  std::vector<Rgb> pixels;

  Index size() const { return width * height; }
};

/// 8-bit single-channel image (label maps: gray level = region id).
struct GrayImage {
  Index width = 0;
  Index height = 0;
  std::vector<std::uint8_t> values;
};

/// Binary PPM (P6) / PGM (P5), maxval 255, '#' header comments allowed.
LabeledImage read_ppm(const std::string& path);
void write_ppm(const std::string& path, const LabeledImage& image);
GrayImage read_pgm(const std::string& path);
void write_pgm(const std::string& path, const GrayImage& image);

Labels labels_from_gray(const GrayImage& image);
GrayImage gray_from_labels(Index width, Index height, const Labels& labels);

struct Quantization {
  Matrix palette;          ///< one RGB centroid per row, at most `levels` rows
  std::vector<int> index;  ///< palette row per pixel
  double squared_error = 0.0;
};

/// Greedy variance-minimizing box splitting: repeatedly split the box with
/// the largest sum of squared error along its highest-variance channel at
/// the threshold minimizing the summed squared error of the two halves.
/// Stops early when every box holds a single color.
Quantization minimum_variance_quantize(const LabeledImage& image, int levels);

/// Normalized histogram of palette indices over a window x window
/// neighbourhood of each pixel (clamp-to-edge), one row per pixel in
/// row-major order, `levels` columns.
Dataset histogram_features(Index width, Index height,
                           const std::vector<int>& palette_index, int levels,
                           int window);

/// Quantization followed by histogram_features.
Dataset image_to_histogram_dataset(const LabeledImage& image, int window,
                                   int levels);

}  // namespace ksc
