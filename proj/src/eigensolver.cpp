#include "ksc/eigensolver.hpp"

#include "ksc/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ksc {
namespace {

void check_k(Index k, Index rank) {
  if (k < 1 || k > rank)
    fail(ErrorKind::InvalidArgument,
         "requested " + std::to_string(k) + " eigenpairs from a rank-" +
             std::to_string(rank) + " factor");
}

void check_degrees(const Vector& degrees, Index n) {
  if (degrees.size() != n)
    fail(ErrorKind::DimensionMismatch, "degree vector length does not match factor rows");
  for (Index i = 0; i < n; ++i)
    if (!(degrees[i] > 0.0))
      fail(ErrorKind::Numerical,
           "nonpositive degree at row " + std::to_string(i));
}

// Weighted column means mu_c = (sum_i g_ic / d_i) / (sum_i 1 / d_i).
Eigen::RowVectorXd weighted_means(const Matrix& g, const Vector& degrees) {
  const Vector inv = degrees.cwiseInverse();
  return (inv.transpose() * g) / inv.sum();
}

}  // namespace

Vector approx_degrees(const Matrix& factor) {
  if (factor.size() == 0) fail(ErrorKind::InvalidArgument, "approx_degrees: empty factor");
  const Vector col_sums = factor.transpose() * Vector::Ones(factor.rows());
  Vector degrees = factor * col_sums;
  for (Index i = 0; i < degrees.size(); ++i)
    if (!(degrees[i] > kMinDegree))
      fail(ErrorKind::Numerical,
           "disconnected/near-zero degree at row " + std::to_string(i) +
               " (d = " + std::to_string(degrees[i]) + ")");
  return degrees;
}

void center_scale_in_place(Matrix& factor, const Vector& degrees) {
  check_degrees(degrees, factor.rows());
  const Eigen::RowVectorXd mu = weighted_means(factor, degrees);
  const Vector scale = degrees.cwiseSqrt().cwiseInverse();
  for (Index c = 0; c < factor.cols(); ++c) {
    auto col = factor.col(c);
    col.array() -= mu[c];
    col.array() *= scale.array();
  }
}

Matrix center_scale(Matrix factor, const Vector& degrees) {
  center_scale_in_place(factor, degrees);
  return factor;
}

void normalize_signs(Matrix& columns) {
  for (Index c = 0; c < columns.cols(); ++c) {
    Index arg = 0;
    double best = -1.0;
    for (Index i = 0; i < columns.rows(); ++i) {
      const double mag = std::abs(columns(i, c));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (columns.rows() > 0 && columns(arg, c) < 0.0) columns.col(c) *= -1.0;
  }
}

EigenBundle leading_eigenpairs_proposed(Matrix x, const Vector& degrees,
                                        Index k) {
  const Index n = x.rows();
  const Index r = x.cols();
  check_k(k, r);
  check_degrees(degrees, n);
  if (n < r)
    fail(ErrorKind::InvalidArgument, "factor has fewer rows than columns");

  // Thin QR computed in the storage of X.
  Eigen::HouseholderQR<Eigen::Ref<Matrix>> qr(x);
  const Matrix r_factor = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();

  Eigen::JacobiSVD<Matrix> svd(r_factor, Eigen::ComputeFullU);
  if (svd.info() != Eigen::Success)
    fail(ErrorKind::Numerical, "SVD of the R x R triangular factor failed");

  // Q U_k = H [U_k; 0], without forming Q.
  Matrix alpha = Matrix::Zero(n, k);
  alpha.topRows(r) = svd.matrixU().leftCols(k);
  alpha.applyOnTheLeft(qr.householderQ());

  EigenBundle out;
  out.k_requested = k;
  out.degrees = degrees;
  out.lambdas = svd.singularValues().head(k).array().square();
  out.betas = degrees.cwiseSqrt().cwiseInverse().asDiagonal() * alpha;
  normalize_signs(out.betas);
  return out;
}

EigenBundle leading_eigenpairs_original(const Matrix& factor,
                                        const Vector& degrees, Index k) {
  const Index n = factor.rows();
  const Index r = factor.cols();
  check_k(k, r);
  check_degrees(degrees, n);
  if (n > 5000)
    fail(ErrorKind::InvalidArgument,
         "reference eigensolver limited to N_tr <= 5000, got " + std::to_string(n));

  Eigen::JacobiSVD<Matrix> svd(factor, Eigen::ComputeThinU);
  const Matrix& u = svd.matrixU();
  const Vector lambda_sq = svd.singularValues().array().square();

  // W = D^-1 M_D U  (weighted-mean removal, then row scaling by 1/d).
  Matrix w = u;
  w.rowwise() -= weighted_means(u, degrees);
  w = degrees.cwiseInverse().asDiagonal() * w;

  const Matrix small = (u.transpose() * w) * lambda_sq.asDiagonal();
  Eigen::EigenSolver<Matrix> eig(small, true);
  if (eig.info() != Eigen::Success)
    fail(ErrorKind::Numerical, "eigendecomposition of the R x R problem failed");

  const auto values = eig.eigenvalues();
  const auto vectors = eig.eigenvectors();
  std::vector<Index> order(static_cast<std::size_t>(r));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return values[a].real() > values[b].real();
  });

  EigenBundle out;
  out.k_requested = k;
  out.degrees = degrees;
  out.lambdas.resize(k);
  out.betas.resize(n, k);
  const double scale = std::max(1.0, std::abs(values[order[0]].real()));
  for (Index j = 0; j < k; ++j) {
    const Index idx = order[static_cast<std::size_t>(j)];
    if (std::abs(values[idx].imag()) > 1e-10 * scale)
      fail(ErrorKind::Numerical,
           "complex eigenvalue leaked into the leading pairs (imag = " +
               std::to_string(values[idx].imag()) + ")");
    const double lambda = std::max(0.0, values[idx].real());
    const Vector gamma = vectors.col(idx).real();
    Vector beta;
    if (lambda > 1e-12)
      beta = w * (lambda_sq.asDiagonal() * gamma) / lambda;
    else
      beta = u * gamma;
    const double norm = beta.norm();
    if (norm > 0.0) beta /= norm;
    out.lambdas[j] = lambda;
    out.betas.col(j) = beta;
  }
  normalize_signs(out.betas);
  return out;
}

}  // namespace ksc
