#pragma once

#include "ksc/types.hpp"

namespace ksc {

/// Leading approximated eigenpairs of D~^-1 M_D~ G G^T.
struct EigenBundle {
  Matrix betas;     ///< N_tr x k, column j pairs with lambdas[j]
  Vector lambdas;   ///< descending, >= 0
  Vector degrees;   ///< approximated degrees d~ = G (G^T 1)
  Index k_requested = 0;
};

/// Degrees below this are treated as zero.
inline constexpr double kMinDegree = 1e-12;

/// d~ = G (G^T 1), O(N R). Throws Numerical on a (near) zero degree.
Vector approx_degrees(const Matrix& factor);

/// X = D~^-1/2 M_D~ G, computed in place: each column loses its
/// 1/d~-weighted mean and is then scaled row-wise by d~^-1/2.
void center_scale_in_place(Matrix& factor, const Vector& degrees);
Matrix center_scale(Matrix factor, const Vector& degrees);

/// Production path: thin QR of X, SVD of the small triangular factor,
/// alpha = Q U, beta = D~^-1/2 alpha. X is consumed (overwritten by the QR).
/// Columns are sign-normalized so that their largest-magnitude entry is
/// positive (first such entry on ties).
EigenBundle leading_eigenpairs_proposed(Matrix x, const Vector& degrees,
                                        Index k);

/// Reference path through the SVD of G and the nonsymmetric R x R problem
/// U^T D~^-1 M_D~ U Lambda^2 gamma = lambda gamma. Eigenvectors are lifted
/// back exactly as beta = D~^-1 M_D~ U Lambda^2 gamma / lambda and scaled to
/// unit norm. For N_tr <= 5000.
EigenBundle leading_eigenpairs_original(const Matrix& factor,
                                        const Vector& degrees, Index k);

/// Flips each column so that its largest-magnitude entry is positive.
void normalize_signs(Matrix& columns);

}  // namespace ksc
