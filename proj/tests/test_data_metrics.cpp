#include "doctest.h"

#include "ksc/dataset.hpp"
#include "ksc/error.hpp"
#include "ksc/metrics.hpp"
#include "ksc/spiral.hpp"
#include "support/oracles.hpp"
#include "support/temp_dir.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

using namespace ksc;
using testing_support::TempDir;

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

Labels random_labels(std::size_t n, int k, std::mt19937_64& rng) {
  Labels l(n);
  for (auto& v : l) v = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
  return l;
}

}  // namespace

TEST_CASE("spiral generator balance and determinism") {
  const Dataset ten = generate_two_spirals(10, 0.0, 3);
  REQUIRE(ten.labels);
  int ones = 0;
  for (int l : *ten.labels) ones += l;
  CHECK(ones == 5);

  for (Index n : {Index{2}, Index{7}, Index{101}, Index{1000}}) {
    const Dataset ds = generate_two_spirals(n, 0.05, 9);
    int n1 = 0;
    for (int l : *ds.labels) n1 += l;
    CHECK(std::abs((n - n1) - n1) <= 1);
    CHECK(ds.rows.allFinite());
    CHECK(ds.dim() == 2);
  }

  const Dataset a = generate_two_spirals(500, 0.1, 42);
  const Dataset b = generate_two_spirals(500, 0.1, 42);
  CHECK(std::memcmp(a.rows.data(), b.rows.data(), sizeof(double) * 1000) == 0);
  CHECK(*a.labels == *b.labels);
  CHECK(generate_two_spirals(500, 0.1, 43).rows != a.rows);
}

TEST_CASE("noiseless spiral arms are separated") {
  const Dataset ds = generate_two_spirals(2000, 0.0, 1);
  double min_cross = 1e300;
  for (Index i = 0; i < ds.size(); ++i)
    for (Index j = 0; j < ds.size(); ++j)
      if ((*ds.labels)[static_cast<std::size_t>(i)] == 0 && (*ds.labels)[static_cast<std::size_t>(j)] == 1)
        min_cross = std::min(min_cross, (ds.rows.row(i) - ds.rows.row(j)).norm());
  CHECK(min_cross > 0.0);
  CHECK(ds.rows.cwiseAbs().maxCoeff() < 3.5);
}

TEST_CASE("adjusted rand index") {
  const Labels a{0, 0, 1, 1, 2, 2, 2};
  CHECK(adjusted_rand_index(a, a) == 1.0);
  CHECK(adjusted_rand_index(a, Labels{5, 5, 3, 3, 9, 9, 9}) == 1.0);

  const Labels x{0, 0, 1, 1};
  const Labels y{0, 1, 1, 1};
  CHECK(adjusted_rand_index(x, y) == doctest::Approx(oracle::ari_by_pairs(x, y)).epsilon(1e-14));
  CHECK(adjusted_rand_index(x, y) == doctest::Approx(0.0).scale(1.0));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const Labels p = random_labels(30, 3, rng);
    const Labels q = random_labels(30, 4, rng);
    CHECK(adjusted_rand_index(p, q) == doctest::Approx(oracle::ari_by_pairs(p, q)).epsilon(1e-12));
    CHECK(adjusted_rand_index(p, q) == doctest::Approx(adjusted_rand_index(q, p)).epsilon(1e-14));
  }

  CHECK_THROWS_AS(adjusted_rand_index(Labels{0, 1}, Labels{0}), Error);
  CHECK_THROWS_AS(adjusted_rand_index(Labels{0}, Labels{0}), Error);
  CHECK(adjusted_rand_index(Labels{0, 0, 0}, Labels{1, 1, 1}) == 1.0);
  CHECK(adjusted_rand_index(Labels{0, 1, 2}, Labels{0, 1, 2}) == 1.0);
}

TEST_CASE("adjusted rand index is zero on average for random labelings") {
  std::mt19937_64 rng(17);
  double sum = 0.0;
  for (int t = 0; t < 200; ++t) sum += adjusted_rand_index(random_labels(200, 2, rng), random_labels(200, 2, rng));
  CHECK(std::abs(sum / 200.0) <= 0.05);
}

TEST_CASE("pairwise F-measure") {
  const Labels a{0, 1, 1, 2};
  CHECK(pairwise_f_measure(a, a) == 1.0);
  CHECK(pairwise_f_measure(Labels{3, 7, 7, 1}, a) == 1.0);

  const std::size_t n = 20;
  Labels one(n, 0), two(n);
  for (std::size_t i = 0; i < n; ++i) two[i] = i < n / 2 ? 0 : 1;
  const double precision = 2.0 * 45.0 / 190.0;
  CHECK(pairwise_f_measure(one, two) ==
        doctest::Approx(2 * precision / (precision + 1.0)).epsilon(1e-14));

  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const Labels p = random_labels(25, 3, rng);
    const Labels q = random_labels(25, 2, rng);
    CHECK(pairwise_f_measure(p, q) == doctest::Approx(oracle::f_by_pairs(p, q)).epsilon(1e-12));
  }
  CHECK(pairwise_f_measure(Labels{0, 1, 2}, Labels{0, 1, 2}) == 0.0);
  CHECK(pairwise_f_measure(Labels{0, 0, 1}, Labels{0, 1, 2}) == 0.0);
  CHECK_THROWS_AS(pairwise_f_measure(Labels{0, 1}, Labels{0}), Error);
}

TEST_CASE("CSV round trip and errors") {
  TempDir dir;
  Dataset ds;
  ds.rows = oracle::random_matrix(20, 3, 77, -1e6, 1e6);
  ds.rows(0, 0) = 1.0 / 3.0;
  ds.rows(1, 1) = -0.0;
  ds.rows(2, 2) = 5e-300;
  Labels labels(20);
  for (int i = 0; i < 20; ++i) labels[static_cast<std::size_t>(i)] = i % 3;
  ds.labels = labels;

  save_csv(dir.file("plain.csv"), ds, false);
  const Dataset plain = load_csv(dir.file("plain.csv"));
  CHECK(std::memcmp(plain.rows.data(), ds.rows.data(), sizeof(double) * 60) == 0);
  CHECK(!plain.labels);

  save_csv(dir.file("labeled.csv"), ds, true);
  const Dataset lab = load_csv(dir.file("labeled.csv"), true);
  CHECK(lab.rows == ds.rows);
  REQUIRE(lab.labels);
  CHECK(*lab.labels == labels);

  write_text(dir.file("ragged.csv"), "1,2,3\n4,5,6\n7,8\n");
  try {
    load_csv(dir.file("ragged.csv"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Format);
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
  write_text(dir.file("text.csv"), "1,2\n3,abc\n");
  try {
    load_csv(dir.file("text.csv"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
  write_text(dir.file("badlabel.csv"), "1,2,0.5\n");
  CHECK_THROWS_AS(load_csv(dir.file("badlabel.csv"), true), Error);
  CHECK_THROWS_AS(load_csv(dir.file("missing.csv")), Error);

  save_labels(dir.file("labels.txt"), labels);
  CHECK(load_labels(dir.file("labels.txt")) == labels);
}

TEST_CASE("dataset subset") {
  Dataset ds;
  ds.rows = oracle::random_matrix(5, 2, 1);
  ds.labels = Labels{0, 1, 2, 3, 4};
  const Dataset s = ds.subset({4, 1});
  CHECK(s.size() == 2);
  CHECK(s.rows.row(0) == ds.rows.row(4));
  CHECK(*s.labels == Labels{4, 1});
}
