#pragma once

#include "ksc/types.hpp"

#include <span>
#include <string_view>

namespace ksc {

enum class KernelKind { Rbf, ChiSquare };

std::string_view to_string(KernelKind kind);
KernelKind parse_kernel_kind(std::string_view name);

/// Positive-definite kernel with unit diagonal.
///
/// RBF:        K(x, y) = exp(-||x - y||^2 / param)
///             NOTE: param is gamma itself, not 2 sigma^2. gamma = 0.006
///             means exp(-1) at squared distance 0.006.
/// ChiSquare:  K(h, g) = exp(-chi2(h, g) / param),
///             chi2(h, g) = 0.5 sum_l (h_l - g_l)^2 / (h_l + g_l),
///             bins with h_l + g_l = 0 contribute 0. Inputs must be >= 0.
struct KernelSpec {
  KernelKind kind = KernelKind::Rbf;
  double param = 1.0;

  static KernelSpec rbf(double gamma) { return {KernelKind::Rbf, gamma}; }
  static KernelSpec chi_square(double sigma) {
    return {KernelKind::ChiSquare, sigma};
  }

  /// Throws InvalidArgument unless param is finite and positive.
  void validate() const;
};

/// Exact pairwise evaluation; the distance term is accumulated per feature
/// from the differences, never through the norm expansion.
double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y);

/// Throws unless every entry of `rows` is finite and, for the chi-square
/// kernel, nonnegative.
void check_kernel_input(const KernelSpec& spec, const Matrix& rows);

/// Kernel values between rows [begin, end) of `points` and the single point
/// `y` (dim() values), written to out[0 .. end-begin).
void kernel_against(const KernelSpec& spec, const Matrix& points, Index begin,
                    Index end, std::span<const double> y, double* out);

/// Column j of the kernel matrix of `data`.
Vector kernel_column(const KernelSpec& spec, const Dataset& data, Index j);

/// |a| x |b| block of kernel values.
Matrix kernel_cross(const KernelSpec& spec, const Matrix& a, const Matrix& b);
Matrix kernel_cross(const KernelSpec& spec, const Dataset& a, const Dataset& b);

/// K(points, centers) * weights without forming the full kernel block.
/// weights has one row per center; the result one row per point.
Matrix kernel_apply(const KernelSpec& spec, const Matrix& points,
                    const Matrix& centers, const Matrix& weights);

}  // namespace ksc
