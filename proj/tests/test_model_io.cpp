#include "doctest.h"

#include "ksc/error.hpp"
#include "ksc/model_io.hpp"
#include "ksc/sparse_model.hpp"
#include "support/oracles.hpp"
#include "support/temp_dir.hpp"

#include <sstream>

using namespace ksc;
using testing_support::TempDir;

namespace {

SparseKscModel random_model(Index r, Index d, Index k, std::uint64_t seed, Encoding enc) {
  SparseKscModel m;
  m.kernel = KernelSpec::rbf(0.0061234567891234);
  m.k_clusters = k;
  m.encoding = enc;
  m.bias_variant = BiasVariant::Original;
  m.reduced_points = oracle::random_matrix(r, d, seed);
  m.xi = oracle::random_matrix(r, k - 1, seed + 1, -1e3, 1e3);
  m.bias = oracle::random_matrix(k - 1, 1, seed + 2);
  if (enc == Encoding::SignCodebook) {
    m.prototypes = Matrix::Ones(k, k - 1);
    for (Index p = 1; p < k; ++p) m.prototypes(p, p - 1) = -1.0;
  } else {
    m.prototypes = oracle::random_matrix(k, k - 1, seed + 3).rowwise().normalized();
  }
  m.n_train = 1234;
  m.seed = 18446744073709551615ull;
  return m;
}

std::string serialize(const SparseKscModel& m) {
  std::ostringstream out;
  save_model(out, m);
  return out.str();
}

std::string load_error(const std::string& text) {
  std::istringstream in(text);
  try {
    load_model(in);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Format);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("model round trip preserves scores") {
  TempDir dir;
  for (Encoding enc : {Encoding::SignCodebook, Encoding::Direction}) {
    const SparseKscModel m = random_model(37, 3, 4, 5, enc);
    save_model(dir.file("m.txt"), m);
    const SparseKscModel back = load_model(dir.file("m.txt"));
    CHECK(back.kernel.kind == m.kernel.kind);
    CHECK(back.kernel.param == m.kernel.param);
    CHECK(back.k_clusters == 4);
    CHECK(back.encoding == enc);
    CHECK(back.bias_variant == BiasVariant::Original);
    CHECK(back.n_train == 1234);
    CHECK(back.seed == m.seed);
    CHECK(back.reduced_points == m.reduced_points);
    CHECK(back.xi == m.xi);
    CHECK(back.bias == m.bias);
    CHECK(back.prototypes == m.prototypes);

    const Matrix pts = oracle::random_matrix(500, 3, 9);
    CHECK((scores(back, pts) - scores(m, pts)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(predict(back, pts) == predict(m, pts));
    CHECK(serialize(back) == serialize(m));
  }
}

TEST_CASE("model text layout") {
  const std::string text = serialize(random_model(2, 2, 2, 1, Encoding::SignCodebook));
  CHECK(text.rfind("KSC-MODEL 1\n", 0) == 0);
  for (const char* key : {"\nkernel rbf\n", "\nK 2\n", "\nencoding sign\n", "\nbias_variant original\n",
                          "\nR 2\n", "\nd 2\n", "\nN_tr 1234\n", "\nREDUCED\n", "\nXI\n", "\nBIAS\n",
                          "\nCODEBOOK\n"})
    CHECK(text.find(key) != std::string::npos);
  const std::string dir_text = serialize(random_model(2, 2, 3, 1, Encoding::Direction));
  CHECK(dir_text.find("\nPROTOTYPES\n") != std::string::npos);
}

TEST_CASE("tampered and truncated model files") {
  const std::string good = serialize(random_model(5, 2, 3, 2, Encoding::SignCodebook));

  std::string v2 = good;
  v2.replace(0, 11, "KSC-MODEL 2");
  CHECK(load_error(v2).find("version") != std::string::npos);
  CHECK(load_error("hello\n").find("KSC-MODEL") != std::string::npos);

  const std::size_t xi = good.find("\nXI\n");
  const std::string cut = good.substr(0, xi + 4) + "0.5 0.25\n";
  CHECK(load_error(cut).find("XI") != std::string::npos);

  std::string nan = good;
  const std::size_t bias = nan.find("\nBIAS\n") + 6;
  nan.replace(bias, nan.find(' ', bias) - bias, "nan");
  CHECK(!load_error(nan).empty());

  std::string word = good;
  word.replace(word.find("\nR 5\n"), 5, "\nR five\n");
  CHECK(!load_error(word).empty());

  std::string short_row = good;
  const std::size_t red = short_row.find("\nREDUCED\n") + 9;
  short_row.erase(short_row.find(' ', red), short_row.find('\n', red) - short_row.find(' ', red));
  CHECK(load_error(short_row).find("REDUCED") != std::string::npos);

  CHECK_THROWS_AS(load_model(std::string("/nonexistent/dir/model.txt")), Error);
}
