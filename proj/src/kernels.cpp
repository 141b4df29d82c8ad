#include "ksc/kernels.hpp"

#include "ksc/error.hpp"
#include "ksc/parallel.hpp"
#include "ksc/simd.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace ksc {
namespace {

constexpr Index kRowChunk = 2048;

std::vector<double> row_copy(const Matrix& m, Index i) {
  std::vector<double> out(static_cast<std::size_t>(m.cols()));
  for (Index k = 0; k < m.cols(); ++k) out[static_cast<std::size_t>(k)] = m(i, k);
  return out;
}

void check_dims(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols())
    fail(ErrorKind::DimensionMismatch,
         "feature dimension mismatch: " + std::to_string(a.cols()) + " vs " +
             std::to_string(b.cols()));
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  return kind == KernelKind::Rbf ? "rbf" : "chi2";
}

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "rbf") return KernelKind::Rbf;
  if (name == "chi2" || name == "chisquare") return KernelKind::ChiSquare;
  fail(ErrorKind::InvalidArgument, "unknown kernel '" + std::string(name) + "'");
}

void KernelSpec::validate() const {
  if (!(param > 0.0) || !std::isfinite(param))
    fail(ErrorKind::InvalidArgument,
         "kernel parameter must be positive and finite, got " + std::to_string(param));
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y) {
  spec.validate();
  if (x.size() != y.size())
    fail(ErrorKind::DimensionMismatch,
         "kernel_eval: dimension mismatch " + std::to_string(x.size()) + " vs " +
             std::to_string(y.size()));
  double dist = 0.0;
  if (spec.kind == KernelKind::Rbf) {
    for (std::size_t l = 0; l < x.size(); ++l) {
      const double diff = x[l] - y[l];
      dist = dist + diff * diff;
    }
  } else {
    for (std::size_t l = 0; l < x.size(); ++l) {
      if (x[l] < 0.0 || y[l] < 0.0)
        fail(ErrorKind::InvalidArgument,
             "chi-square kernel needs nonnegative histogram entries");
      const double sum = x[l] + y[l];
      const double diff = x[l] - y[l];
      const double sq = diff * diff;
      dist = dist + (sum != 0.0 ? (0.5 * sq) / sum : 0.0);
    }
  }
  return std::exp(-dist / spec.param);
}

void check_kernel_input(const KernelSpec& spec, const Matrix& rows) {
  if (!rows.allFinite())
    fail(ErrorKind::InvalidArgument, "non-finite feature value");
  if (spec.kind == KernelKind::ChiSquare && rows.size() > 0 && rows.minCoeff() < 0.0)
    fail(ErrorKind::InvalidArgument,
         "chi-square kernel needs nonnegative histogram entries");
}

void kernel_against(const KernelSpec& spec, const Matrix& points, Index begin,
                    Index end, std::span<const double> y, double* out) {
  const auto n = static_cast<std::size_t>(end - begin);
  const auto& simd = simd::kernels();
  std::fill(out, out + n, 0.0);
  for (Index k = 0; k < points.cols(); ++k) {
    const double* column = points.col(k).data() + begin;
    if (spec.kind == KernelKind::Rbf)
      simd.squared_distance_accumulate(column, n, y[static_cast<std::size_t>(k)], out);
    else
      simd.chi_square_accumulate(column, n, y[static_cast<std::size_t>(k)], out);
  }
  const double inv = 1.0 / spec.param;
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(-out[i] * inv);
}

Vector kernel_column(const KernelSpec& spec, const Dataset& data, Index j) {
  spec.validate();
  if (j < 0 || j >= data.size())
    fail(ErrorKind::InvalidArgument,
         "kernel_column: index " + std::to_string(j) + " out of range [0, " +
             std::to_string(data.size()) + ")");
  const auto y = row_copy(data.rows, j);
  Vector out(data.size());
  parallel_for(static_cast<std::size_t>(data.size()), kRowChunk,
               [&](std::size_t b, std::size_t e) {
                 kernel_against(spec, data.rows, static_cast<Index>(b),
                                static_cast<Index>(e), y, out.data() + b);
               });
  return out;
}

Matrix kernel_cross(const KernelSpec& spec, const Matrix& a, const Matrix& b) {
  spec.validate();
  check_dims(a, b);
  check_kernel_input(spec, a);
  check_kernel_input(spec, b);
  Matrix out(a.rows(), b.rows());
  parallel_for(static_cast<std::size_t>(b.rows()), 16,
               [&](std::size_t jb, std::size_t je) {
                 for (auto j = static_cast<Index>(jb); j < static_cast<Index>(je); ++j) {
                   const auto y = row_copy(b, j);
                   kernel_against(spec, a, 0, a.rows(), y, out.col(j).data());
                 }
               });
  return out;
}

Matrix kernel_cross(const KernelSpec& spec, const Dataset& a, const Dataset& b) {
  return kernel_cross(spec, a.rows, b.rows);
}

Matrix kernel_apply(const KernelSpec& spec, const Matrix& points,
                    const Matrix& centers, const Matrix& weights) {
  spec.validate();
  check_dims(points, centers);
  if (weights.rows() != centers.rows())
    fail(ErrorKind::DimensionMismatch,
         "kernel_apply: weights have " + std::to_string(weights.rows()) +
             " rows for " + std::to_string(centers.rows()) + " centers");
  const Index m = weights.cols();
  Matrix out = Matrix::Zero(points.rows(), m);
  if (points.rows() == 0) return out;

  // Center rows laid out contiguously once.
  std::vector<std::vector<double>> center_rows;
  center_rows.reserve(static_cast<std::size_t>(centers.rows()));
  for (Index r = 0; r < centers.rows(); ++r) center_rows.push_back(row_copy(centers, r));

  parallel_for(static_cast<std::size_t>(points.rows()), kRowChunk,
               [&](std::size_t b, std::size_t e) {
                 const auto& simd = simd::kernels();
                 const auto begin = static_cast<Index>(b);
                 std::vector<double> kcol(e - b);
                 for (Index chunk = begin; chunk < static_cast<Index>(e); chunk += kRowChunk) {
                   const Index stop = std::min<Index>(chunk + kRowChunk, static_cast<Index>(e));
                   const auto len = static_cast<std::size_t>(stop - chunk);
                   for (Index r = 0; r < centers.rows(); ++r) {
                     kernel_against(spec, points, chunk, stop,
                                    center_rows[static_cast<std::size_t>(r)], kcol.data());
                     for (Index c = 0; c < m; ++c)
                       simd.axpy(len, weights(r, c), kcol.data(), out.col(c).data() + chunk);
                   }
                 }
               });
  return out;
}

}  // namespace ksc
