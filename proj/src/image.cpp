#include "ksc/image.hpp"

#include "ksc/error.hpp"
#include "ksc/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>

namespace ksc {
namespace {

// Reads the next header token, skipping whitespace and '#' comments.
long read_header_value(std::istream& in, const std::string& path) {
  for (;;) {
    const int c = in.peek();
    if (c == EOF) fail(ErrorKind::Format, path + ": truncated header");
    if (std::isspace(c)) {
      in.get();
    } else if (c == '#') {
      in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    } else {
      break;
    }
  }
  long value = 0;
  if (!(in >> value) || value <= 0)
    fail(ErrorKind::Format, path + ": malformed header field");
  return value;
}

void read_header(std::istream& in, const std::string& path, const char* magic,
                 Index& width, Index& height) {
  char m[2] = {0, 0};
  in.read(m, 2);
  if (!in || m[0] != magic[0] || m[1] != magic[1])
    fail(ErrorKind::Format, path + ": expected " + std::string(magic, 2) + " magic");
  width = read_header_value(in, path);
  height = read_header_value(in, path);
  const long maxval = read_header_value(in, path);
  if (maxval != 255) fail(ErrorKind::Format, path + ": maxval must be 255");
  if (!std::isspace(in.get())) fail(ErrorKind::Format, path + ": malformed header end");
}

struct Box {
  std::vector<std::uint32_t> members;
  std::array<double, 3> sum{};
  std::array<double, 3> sum_sq{};

  double count() const { return static_cast<double>(members.size()); }
  double sse() const {
    double e = 0.0;
    for (int c = 0; c < 3; ++c) e += sum_sq[c] - sum[c] * sum[c] / count();
    return std::max(0.0, e);
  }
  double variance(int c) const {
    return sum_sq[c] / count() - (sum[c] / count()) * (sum[c] / count());
  }
  bool single_color(const std::vector<Rgb>& px) const {
    for (auto m : members)
      if (px[m] != px[members.front()]) return false;
    return true;
  }
};

Box make_box(std::vector<std::uint32_t> members, const std::vector<Rgb>& px) {
  Box b;
  b.members = std::move(members);
  for (auto m : b.members)
    for (int c = 0; c < 3; ++c) {
      const double v = px[m][c];
      b.sum[c] += v;
      b.sum_sq[c] += v * v;
    }
  return b;
}

// Threshold t on channel `axis` (left: value <= t) minimizing the summed
// SSE of both halves; -1 when the box cannot be split on that axis.
int best_threshold(const Box& box, int axis, const std::vector<Rgb>& px) {
  std::array<double, 256> cnt{};
  std::array<std::array<double, 3>, 256> s{};
  std::array<std::array<double, 3>, 256> sq{};
  for (auto m : box.members) {
    const int v = px[m][axis];
    cnt[v] += 1.0;
    for (int c = 0; c < 3; ++c) {
      s[v][c] += px[m][c];
      sq[v][c] += static_cast<double>(px[m][c]) * px[m][c];
    }
  }
  double left_n = 0.0;
  std::array<double, 3> left_s{}, left_sq{};
  int best = -1;
  double best_err = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 255; ++t) {
    left_n += cnt[t];
    for (int c = 0; c < 3; ++c) {
      left_s[c] += s[t][c];
      left_sq[c] += sq[t][c];
    }
    const double right_n = box.count() - left_n;
    if (left_n == 0.0 || right_n == 0.0) continue;
    double err = 0.0;
    for (int c = 0; c < 3; ++c) {
      const double rs = box.sum[c] - left_s[c];
      const double rsq = box.sum_sq[c] - left_sq[c];
      err += left_sq[c] - left_s[c] * left_s[c] / left_n;
      err += rsq - rs * rs / right_n;
    }
    if (err < best_err) {
      best_err = err;
      best = t;
    }
  }
  return best;
}

}  // namespace

LabeledImage read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "' for reading");
  LabeledImage img;
  read_header(in, path, "P6", img.width, img.height);
  img.pixels.resize(static_cast<std::size_t>(img.size()));
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size() * 3));
  if (in.gcount() != static_cast<std::streamsize>(img.pixels.size() * 3))
    fail(ErrorKind::Format, path + ": truncated pixel data");
  return img;
}

void write_ppm(const std::string& path, const LabeledImage& image) {
  if (static_cast<Index>(image.pixels.size()) != image.size())
    fail(ErrorKind::InvalidArgument, "image pixel count does not match its size");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size() * 3));
  if (!out) fail(ErrorKind::Io, "write error on '" + path + "'");
}

GrayImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "' for reading");
  GrayImage img;
  read_header(in, path, "P5", img.width, img.height);
  img.values.resize(static_cast<std::size_t>(img.width * img.height));
  in.read(reinterpret_cast<char*>(img.values.data()),
          static_cast<std::streamsize>(img.values.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.values.size()))
    fail(ErrorKind::Format, path + ": truncated pixel data");
  return img;
}

void write_pgm(const std::string& path, const GrayImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.values.data()),
            static_cast<std::streamsize>(image.values.size()));
  if (!out) fail(ErrorKind::Io, "write error on '" + path + "'");
}

Labels labels_from_gray(const GrayImage& image) {
  return Labels(image.values.begin(), image.values.end());
}

GrayImage gray_from_labels(Index width, Index height, const Labels& labels) {
  if (static_cast<Index>(labels.size()) != width * height)
    fail(ErrorKind::DimensionMismatch, "label count does not match image size");
  GrayImage img{width, height, {}};
  img.values.reserve(labels.size());
  for (int l : labels) {
    if (l < 0 || l > 255) fail(ErrorKind::InvalidArgument, "label outside 0..255");
    img.values.push_back(static_cast<std::uint8_t>(l));
  }
  return img;
}

Quantization minimum_variance_quantize(const LabeledImage& image, int levels) {
  if (levels < 1) fail(ErrorKind::InvalidArgument, "quantizer needs levels >= 1");
  if (image.pixels.empty()) fail(ErrorKind::InvalidArgument, "quantizer needs a nonempty image");
  const auto& px = image.pixels;

  std::vector<std::uint32_t> all(px.size());
  for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<Box> boxes;
  boxes.push_back(make_box(std::move(all), px));
  std::vector<bool> frozen{false};

  while (static_cast<int>(boxes.size()) < levels) {
    int pick = -1;
    for (int b = 0; b < static_cast<int>(boxes.size()); ++b) {
      if (frozen[b]) continue;
      if (pick < 0 || boxes[b].sse() > boxes[pick].sse()) pick = b;
    }
    if (pick < 0) break;
    if (boxes[pick].single_color(px)) {
      frozen[pick] = true;
      continue;
    }
    std::array<int, 3> axes{0, 1, 2};
    std::stable_sort(axes.begin(), axes.end(), [&](int l, int r) {
      return boxes[pick].variance(l) > boxes[pick].variance(r);
    });
    int axis = axes[0];
    int t = best_threshold(boxes[pick], axis, px);
    for (int k = 1; t < 0 && k < 3; ++k) t = best_threshold(boxes[pick], axis = axes[k], px);

    std::vector<std::uint32_t> left, right;
    for (auto m : boxes[pick].members) (px[m][axis] <= t ? left : right).push_back(m);
    boxes[pick] = make_box(std::move(left), px);
    boxes.push_back(make_box(std::move(right), px));
    frozen.push_back(false);
  }

  Quantization q;
  q.palette.resize(static_cast<Index>(boxes.size()), 3);
  q.index.assign(px.size(), 0);
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    for (int c = 0; c < 3; ++c)
      q.palette(static_cast<Index>(b), c) = boxes[b].sum[c] / boxes[b].count();
    for (auto m : boxes[b].members) q.index[m] = static_cast<int>(b);
    q.squared_error += boxes[b].sse();
  }
  return q;
}

Dataset histogram_features(Index width, Index height,
                           const std::vector<int>& palette_index, int levels,
                           int window) {
  if (window < 1 || window % 2 == 0)
    fail(ErrorKind::InvalidArgument, "histogram window must be odd and >= 1");
  if (static_cast<Index>(palette_index.size()) != width * height)
    fail(ErrorKind::DimensionMismatch, "palette index count does not match image size");
  const Index half = window / 2;
  const double norm = 1.0 / static_cast<double>(window * window);
  Dataset out;
  out.rows = Matrix::Zero(width * height, levels);
  parallel_for(static_cast<std::size_t>(height), 8, [&](std::size_t yb, std::size_t ye) {
    for (auto y = static_cast<Index>(yb); y < static_cast<Index>(ye); ++y)
      for (Index x = 0; x < width; ++x) {
        const Index row = y * width + x;
        for (Index dy = -half; dy <= half; ++dy) {
          const Index yy = std::clamp<Index>(y + dy, 0, height - 1);
          for (Index dx = -half; dx <= half; ++dx) {
            const Index xx = std::clamp<Index>(x + dx, 0, width - 1);
            out.rows(row, palette_index[static_cast<std::size_t>(yy * width + xx)]) += norm;
          }
        }
      }
  });
  return out;
}

Dataset image_to_histogram_dataset(const LabeledImage& image, int window,
                                   int levels) {
  const Quantization q = minimum_variance_quantize(image, levels);
  return histogram_features(image.width, image.height, q.index, levels, window);
}

}  // namespace ksc
