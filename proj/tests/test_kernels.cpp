#include "doctest.h"

#include "ksc/error.hpp"
#include "ksc/kernels.hpp"
#include "support/oracles.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

using namespace ksc;

namespace {

std::vector<double> row(const Matrix& m, Index i) {
  std::vector<double> out(static_cast<std::size_t>(m.cols()));
  for (Index k = 0; k < m.cols(); ++k) out[static_cast<std::size_t>(k)] = m(i, k);
  return out;
}

double min_eigenvalue(const Matrix& k) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(k, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("kernel_eval analytic values") {
  const std::vector<double> x{0.3, -1.2, 4.0};
  CHECK(kernel_eval(KernelSpec::rbf(0.006), x, x) == 1.0);
  CHECK(kernel_eval(KernelSpec::chi_square(0.5), std::vector<double>{0.2, 0.8},
                    std::vector<double>{0.2, 0.8}) == 1.0);

  const std::vector<double> a{0.0};
  const std::vector<double> b{std::sqrt(0.006)};
  CHECK(kernel_eval(KernelSpec::rbf(0.006), a, b) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(std::exp(-1.0) == doctest::Approx(0.3678794).epsilon(1e-7));

  std::vector<double> h1(8, 0.0), h2(8, 0.0);
  h1[0] = 1.0;
  h2[1] = 1.0;
  CHECK(kernel_eval(KernelSpec::chi_square(1.0), h1, h2) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("chi-square bins empty in both histograms contribute nothing") {
  const std::vector<double> h{0.5, 0.0, 0.5};
  const std::vector<double> g{0.25, 0.0, 0.75};
  const std::vector<double> h2{0.5, 0.5};
  const std::vector<double> g2{0.25, 0.75};
  CHECK(kernel_eval(KernelSpec::chi_square(0.1), h, g) ==
        kernel_eval(KernelSpec::chi_square(0.1), h2, g2));
}

TEST_CASE("kernel_eval error paths") {
  const std::vector<double> x{1.0, 2.0};
  const std::vector<double> y{1.0};
  CHECK_THROWS_AS(kernel_eval(KernelSpec::rbf(1.0), x, y), Error);
  CHECK_THROWS_AS(kernel_eval(KernelSpec::chi_square(1.0), std::vector<double>{-0.1, 1.1},
                              std::vector<double>{0.5, 0.5}),
                  Error);
  CHECK_THROWS_AS(kernel_eval(KernelSpec::rbf(0.0), x, x), Error);
  CHECK_THROWS_AS(kernel_eval(KernelSpec::rbf(-2.0), x, x), Error);
}

TEST_CASE("kernel_eval is symmetric and lies in (0, 1]") {
  const Matrix pts = oracle::random_matrix(40, 4, 17);
  const Matrix hist = oracle::random_matrix(40, 4, 18, 0.0, 1.0);
  for (Index i = 0; i < 40; ++i)
    for (Index j = 0; j < 40; ++j) {
      const auto s = KernelSpec::rbf(2.0);
      const double kij = kernel_eval(s, row(pts, i), row(pts, j));
      CHECK(kij == kernel_eval(s, row(pts, j), row(pts, i)));
      CHECK(kij > 0.0);
      CHECK(kij <= 1.0);
      const auto c = KernelSpec::chi_square(0.2);
      const double cij = kernel_eval(c, row(hist, i), row(hist, j));
      CHECK(cij == kernel_eval(c, row(hist, j), row(hist, i)));
      CHECK(cij > 0.0);
      CHECK(cij <= 1.0);
    }
}

TEST_CASE("kernel_column") {
  Dataset one;
  one.rows = Matrix::Constant(1, 3, 0.5);
  CHECK(kernel_column(KernelSpec::rbf(1.0), one, 0) == Vector::Ones(1));

  Dataset same;
  same.rows = Matrix::Constant(7, 2, -1.25);
  CHECK(kernel_column(KernelSpec::rbf(0.1), same, 3) == Vector::Ones(7));

  Dataset rnd;
  rnd.rows = oracle::random_matrix(5, 2, 3);
  const auto spec = KernelSpec::rbf(0.4);
  for (Index j = 0; j < 5; ++j) {
    const Vector col = kernel_column(spec, rnd, j);
    CHECK(col[j] == 1.0);
    for (Index i = 0; i < 5; ++i)
      CHECK(col[i] == doctest::Approx(oracle::rbf(rnd.rows, i, rnd.rows, j, 0.4)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(kernel_column(spec, rnd, 5), Error);
  CHECK_THROWS_AS(kernel_column(spec, rnd, -1), Error);
}

TEST_CASE("kernel_cross shapes, symmetry and positive semidefiniteness") {
  const auto spec = KernelSpec::rbf(0.8);
  Dataset single;
  single.rows = Matrix::Constant(1, 2, 3.0);
  CHECK(kernel_cross(spec, single, single) == Matrix::Ones(1, 1));

  Dataset four;
  four.rows = oracle::random_matrix(4, 3, 21);
  const Matrix k4 = kernel_cross(spec, four, four);
  CHECK(k4 == k4.transpose());
  CHECK(k4.diagonal() == Vector::Ones(4));
  CHECK(min_eigenvalue(k4) >= -1e-12);

  Dataset a, b;
  a.rows = oracle::random_matrix(2, 3, 22);
  b.rows = oracle::random_matrix(3, 3, 23);
  CHECK(kernel_cross(spec, a, b) == kernel_cross(spec, b, a).transpose());

  Dataset wrong;
  wrong.rows = oracle::random_matrix(3, 2, 24);
  CHECK_THROWS_AS(kernel_cross(spec, a, wrong), Error);
}

TEST_CASE("kernel matrices on random small sets are positive semidefinite") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Index n = 10 + static_cast<Index>(seed) * 4;
    const Matrix pts = oracle::random_matrix(n, 3, 100 + seed);
    const Matrix hist = oracle::random_matrix(n, 5, 200 + seed, 0.0, 1.0);
    CHECK(min_eigenvalue(kernel_cross(KernelSpec::rbf(0.5), pts, pts)) >= -1e-10);
    CHECK(min_eigenvalue(kernel_cross(KernelSpec::chi_square(0.3), hist, hist)) >= -1e-10);
  }
}

TEST_CASE("block kernel input validation") {
  Matrix neg = Matrix::Constant(3, 2, 0.5);
  neg(1, 1) = -0.01;
  CHECK_THROWS_AS(kernel_cross(KernelSpec::chi_square(1.0), neg, neg), Error);
  Matrix nan = Matrix::Zero(2, 2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(kernel_cross(KernelSpec::rbf(1.0), nan, nan), Error);
}

TEST_CASE("kernel_apply equals the dense kernel block times the weights") {
  const auto spec = KernelSpec::rbf(0.3);
  const Matrix pts = oracle::random_matrix(5000, 2, 31);
  const Matrix centers = oracle::random_matrix(17, 2, 32);
  const Matrix w = oracle::random_matrix(17, 3, 33);
  Matrix dense(pts.rows(), centers.rows());
  for (Index i = 0; i < pts.rows(); ++i)
    for (Index r = 0; r < centers.rows(); ++r) dense(i, r) = oracle::rbf(pts, i, centers, r, 0.3);
  const Matrix expected = dense * w;
  const Matrix got = kernel_apply(spec, pts, centers, w);
  CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(kernel_apply(spec, Matrix(0, 2), centers, w).rows() == 0);
}
