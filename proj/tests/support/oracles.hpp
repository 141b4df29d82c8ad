#pragma once

// Test-only reference computations. Everything here is written directly
// from the defining formulas with dense matrices and must not call into the
// library's implementation of the quantity it checks.

#include "ksc/types.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using ksc::Index;
using ksc::Matrix;
using ksc::Vector;

inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed,
                            double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = u(rng);
  return m;
}

inline double rbf(const Matrix& x, Index i, const Matrix& y, Index j, double gamma) {
  double s = 0.0;
  for (Index k = 0; k < x.cols(); ++k) s += (x(i, k) - y(j, k)) * (x(i, k) - y(j, k));
  return std::exp(-s / gamma);
}

inline Matrix dense_rbf(const Matrix& x, double gamma) {
  Matrix k(x.rows(), x.rows());
  for (Index i = 0; i < x.rows(); ++i)
    for (Index j = 0; j < x.rows(); ++j) k(i, j) = rbf(x, i, x, j, gamma);
  return k;
}

/// D^-1 M_D A with D = diag(d), M_D = I - 1 1^T D^-1 / (1^T D^-1 1).
inline Matrix weighted_centering_operator(const Vector& d) {
  const Index n = d.size();
  const Vector inv = d.cwiseInverse();
  Matrix m = Matrix::Identity(n, n) - Vector::Ones(n) * inv.transpose() / inv.sum();
  return inv.asDiagonal() * m;
}

struct DenseEigen {
  Vector values;   // descending real parts
  Matrix vectors;  // columns, unit norm
};

/// Leading k eigenpairs of a general (nonsymmetric) matrix via the QR
/// algorithm on the full matrix.
inline DenseEigen leading_eigen(const Matrix& a, Index k) {
  Eigen::EigenSolver<Matrix> es(a);
  std::vector<Index> order(static_cast<std::size_t>(a.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index x, Index y) {
    return es.eigenvalues()[x].real() > es.eigenvalues()[y].real();
  });
  DenseEigen out;
  out.values.resize(k);
  out.vectors.resize(a.rows(), k);
  for (Index j = 0; j < k; ++j) {
    const Index idx = order[static_cast<std::size_t>(j)];
    out.values[j] = es.eigenvalues()[idx].real();
    Vector v = es.eigenvectors().col(idx).real();
    out.vectors.col(j) = v / v.norm();
  }
  return out;
}

inline double abs_cosine(const Vector& a, const Vector& b) {
  return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

/// ARI from explicit enumeration of all unordered pairs.
inline double ari_by_pairs(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = a.size();
  double both = 0, in_a = 0, in_b = 0, total = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool sa = a[i] == a[j];
      const bool sb = b[i] == b[j];
      both += sa && sb;
      in_a += sa;
      in_b += sb;
      total += 1;
    }
  const double expected = in_a * in_b / total;
  const double max_index = 0.5 * (in_a + in_b);
  return (both - expected) / (max_index - expected);
}

/// Pairwise precision/recall F-measure by explicit enumeration.
inline double f_by_pairs(const std::vector<int>& pred, const std::vector<int>& truth) {
  double tp = 0, pp = 0, tt = 0;
  for (std::size_t i = 0; i < pred.size(); ++i)
    for (std::size_t j = i + 1; j < pred.size(); ++j) {
      const bool sp = pred[i] == pred[j];
      const bool st = truth[i] == truth[j];
      tp += sp && st;
      pp += sp;
      tt += st;
    }
  const double p = pp > 0 ? tp / pp : 0.0;
  const double r = tt > 0 ? tp / tt : 0.0;
  return p + r > 0 ? 2 * p * r / (p + r) : 0.0;
}

/// Permutations of 0..k-1 mapping a's labels onto b's; true if some
/// relabeling makes them equal.
inline bool equal_up_to_relabeling(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> fwd(256, -1), bwd(256, -1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    int& f = fwd[static_cast<std::size_t>(a[i])];
    int& g = bwd[static_cast<std::size_t>(b[i])];
    if (f < 0 && g < 0) {
      f = b[i];
      g = a[i];
    } else if (f != b[i] || g != a[i]) {
      return false;
    }
  }
  return true;
}

}  // namespace oracle
