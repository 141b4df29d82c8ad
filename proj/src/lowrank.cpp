#include "ksc/lowrank.hpp"

#include "ksc/error.hpp"
#include "ksc/parallel.hpp"
#include "ksc/simd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ksc {
namespace {

// Residual diagonal entries are clamped at zero; rounding can push them
// slightly negative once a point is well represented.
double trace_of(const Vector& diag) {
  double sum = 0.0;
  for (Index i = 0; i < diag.size(); ++i) sum += diag[i];
  return sum;
}

Index argmax_lowest(const Vector& diag) {
  Index best = 0;
  for (Index i = 1; i < diag.size(); ++i)
    if (diag[i] > diag[best]) best = i;
  return best;
}

constexpr Index kGrowBlock = 64;

}  // namespace

IcdResult IcdResult::truncated(Index r) const {
  if (r < 1 || r > rank())
    fail(ErrorKind::InvalidArgument,
         "cannot truncate rank-" + std::to_string(rank()) + " ICD to " + std::to_string(r));
  IcdResult out;
  out.factor = factor.leftCols(r);
  out.pivots.assign(pivots.begin(), pivots.begin() + r);
  out.residual_trace.assign(residual_trace.begin(), residual_trace.begin() + r + 1);
  out.eps_final = out.residual_trace.back() / residual_trace.front();
  return out;
}

IcdResult icd(const KernelSpec& spec, const Dataset& data, double eps_tol,
              Index r_max) {
  spec.validate();
  const Index n = data.size();
  if (n < 1) fail(ErrorKind::InvalidArgument, "icd: empty dataset");
  if (!(eps_tol >= 0.0 && eps_tol < 1.0))
    fail(ErrorKind::InvalidArgument, "icd: eps_tol must lie in [0, 1)");
  if (r_max < 1 || r_max > n)
    fail(ErrorKind::InvalidArgument,
         "icd: r_max must lie in [1, " + std::to_string(n) + "]");
  check_kernel_input(spec, data.rows);

  // Unit-diagonal kernels: Tr(Omega) = N.
  Vector diag = Vector::Ones(n);
  const double total = static_cast<double>(n);

  IcdResult out;
  Matrix g(n, std::min(r_max, kGrowBlock));
  out.residual_trace.push_back(trace_of(diag));

  Index rank = 0;
  while (rank < r_max) {
    if (out.residual_trace.back() / total <= eps_tol) break;
    const Index p = argmax_lowest(diag);
    const double pivot_diag = diag[p];
    if (pivot_diag <= kIcdDiagonalFloor) break;

    if (rank == g.cols())
      g.conservativeResize(Eigen::NoChange, std::min(r_max, g.cols() + kGrowBlock));

    Vector column = kernel_column(spec, data, p);
    if (!column.allFinite())
      fail(ErrorKind::Numerical, "icd: non-finite kernel value in column " + std::to_string(p));

    // column -= G(:, 0:rank) * G(p, 0:rank)^T, accumulated in fixed order.
    const Index cols = rank;
    parallel_for(static_cast<std::size_t>(n), 4096, [&](std::size_t b, std::size_t e) {
      const auto& simd = simd::kernels();
      for (Index l = 0; l < cols; ++l)
        simd.axpy(e - b, -g(p, l), g.col(l).data() + b, column.data() + b);
    });

    const double pivot_value = std::sqrt(pivot_diag);
    auto gcol = g.col(rank);
    gcol = column / pivot_value;
    for (Index prev : out.pivots) gcol[prev] = 0.0;
    gcol[p] = pivot_value;

    for (Index i = 0; i < n; ++i) diag[i] = std::max(0.0, diag[i] - gcol[i] * gcol[i]);
    diag[p] = 0.0;
    for (Index prev : out.pivots) diag[prev] = 0.0;

    out.pivots.push_back(p);
    ++rank;
    out.residual_trace.push_back(trace_of(diag));
  }

  g.conservativeResize(Eigen::NoChange, rank);
  out.factor = std::move(g);
  out.eps_final = out.residual_trace.back() / total;
  return out;
}

IcdResult dense_pivoted_cholesky_oracle(const KernelSpec& spec,
                                        const Dataset& data) {
  const Index n = data.size();
  if (n < 1) fail(ErrorKind::InvalidArgument, "oracle: empty dataset");
  if (n > 2000)
    fail(ErrorKind::InvalidArgument, "oracle: N = " + std::to_string(n) + " exceeds 2000");

  // Residual (Schur complement) kept as a full matrix.
  Matrix residual = kernel_cross(spec, data, data);
  const double total = residual.trace();

  IcdResult out;
  Matrix g = Matrix::Zero(n, n);
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  Vector diag = residual.diagonal();
  out.residual_trace.push_back(diag.sum());

  Index rank = 0;
  while (rank < n) {
    Index p = -1;
    for (Index i = 0; i < n; ++i) {
      if (chosen[static_cast<std::size_t>(i)]) continue;
      if (p < 0 || residual(i, i) > residual(p, p)) p = i;
    }
    if (p < 0 || residual(p, p) <= kIcdDiagonalFloor) break;

    const double pivot_value = std::sqrt(residual(p, p));
    Vector col = residual.col(p) / pivot_value;
    for (Index i = 0; i < n; ++i)
      if (chosen[static_cast<std::size_t>(i)]) col[i] = 0.0;
    col[p] = pivot_value;
    g.col(rank) = col;
    residual.noalias() -= col * col.transpose();
    chosen[static_cast<std::size_t>(p)] = true;
    out.pivots.push_back(p);
    ++rank;

    double trace = 0.0;
    for (Index i = 0; i < n; ++i)
      if (!chosen[static_cast<std::size_t>(i)]) trace += std::max(0.0, residual(i, i));
    out.residual_trace.push_back(trace);
  }

  out.factor = g.leftCols(rank);
  out.eps_final = out.residual_trace.back() / total;
  return out;
}

}  // namespace ksc
