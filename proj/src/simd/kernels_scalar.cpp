#include "ksc/simd.hpp"

namespace ksc::simd::detail {
namespace {

void squared_distance_accumulate(const double* column, std::size_t n, double y,
                                 double* acc) {
  for (std::size_t i = 0; i < n; ++i) {
    const double diff = column[i] - y;
    acc[i] = acc[i] + diff * diff;
  }
}

void chi_square_accumulate(const double* column, std::size_t n, double y,
                           double* acc) {
  for (std::size_t i = 0; i < n; ++i) {
    const double sum = column[i] + y;
    const double diff = column[i] - y;
    const double sq = diff * diff;
    const double term = sum != 0.0 ? (0.5 * sq) / sum : 0.0;
    acc[i] = acc[i] + term;
  }
}

void axpy(std::size_t n, double alpha, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

}  // namespace

const KernelTable scalar_table{&squared_distance_accumulate,
                               &chi_square_accumulate, &axpy};

}  // namespace ksc::simd::detail
