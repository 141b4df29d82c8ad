#pragma once

#include "ksc/kernels.hpp"
#include "ksc/types.hpp"

#include <vector>

namespace ksc {

/// Result of a greedy symmetrically pivoted incomplete Cholesky
/// decomposition, Omega ~ G G^T.
struct IcdResult {
  Matrix factor;                      ///< N_tr x R
  std::vector<Index> pivots;          ///< reduced set, in selection order
  std::vector<double> residual_trace; ///< R + 1 entries: before each step, then final
  double eps_final = 1.0;             ///< residual_trace.back() / Tr(Omega)

  Index rank() const { return factor.cols(); }

  /// The decomposition that would have resulted from stopping after `r`
  /// steps (pivot selection is greedy, so this equals a run with r_max = r).
  IcdResult truncated(Index r) const;
};

/// Pivot diagonal at or below this value ends the decomposition (numerical
/// rank reached).
inline constexpr double kIcdDiagonalFloor = 1e-12;

/// Incomplete Cholesky decomposition of the kernel matrix of `data` without
/// materializing it. Stops when the relative residual trace drops to
/// eps_tol, after r_max steps, or at the numerical floor. eps_tol = 0 runs
/// to numerical rank. Ties on the residual diagonal go to the lowest index.
IcdResult icd(const KernelSpec& spec, const Dataset& data, double eps_tol,
              Index r_max);

/// Test oracle: forms Omega densely and runs the same greedy rule with
/// right-looking Schur-complement updates to full numerical rank.
/// Limited to N <= 2000.
IcdResult dense_pivoted_cholesky_oracle(const KernelSpec& spec,
                                        const Dataset& data);

}  // namespace ksc
