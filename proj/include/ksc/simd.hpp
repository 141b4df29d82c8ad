#pragma once

#include <cstddef>
#include <string_view>

// Runtime-dispatched inner loops. Every routine has a scalar reference
// implementation; wider variants must produce bit-identical results (no FMA,
// same per-element operation order), which the equivalence tests enforce.
namespace ksc::simd {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

struct KernelTable {
  /// acc[i] += (column[i] - y)^2
  void (*squared_distance_accumulate)(const double* column, std::size_t n,
                                      double y, double* acc);
  /// acc[i] += 0.5 (column[i] - y)^2 / (column[i] + y), zero when the
  /// denominator vanishes.
  void (*chi_square_accumulate)(const double* column, std::size_t n, double y,
                                double* acc);
  /// y[i] += alpha * x[i]
  void (*axpy)(std::size_t n, double alpha, const double* x, double* y);
};

bool supported(Isa isa);

/// Table for a specific ISA; the caller must check supported() first.
const KernelTable& table(Isa isa);

/// ISA used by the library. Chosen once from KSC_SIMD (scalar|avx2) or CPU
/// detection; set_active() overrides it, e.g. for equivalence tests.
Isa active();
void set_active(Isa isa);
const KernelTable& kernels();

namespace detail {
extern const KernelTable scalar_table;
#if defined(KSC_HAVE_AVX2_TU)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace ksc::simd
