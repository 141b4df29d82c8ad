#include "ksc/metrics.hpp"

#include "ksc/error.hpp"

#include <map>
#include <string>
#include <utility>

namespace ksc {
namespace {

double pairs(double n) { return n * (n - 1.0) / 2.0; }

struct PairCounts {
  double same_both = 0.0;  // sum over contingency cells of C(n_ij, 2)
  double same_a = 0.0;     // sum over a's clusters of C(a_i, 2)
  double same_b = 0.0;
  double total = 0.0;
};

PairCounts count_pairs(const Labels& a, const Labels& b, const char* who) {
  if (a.size() != b.size())
    fail(ErrorKind::DimensionMismatch,
         std::string(who) + ": label vectors differ in length (" +
             std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  std::map<std::pair<int, int>, double> cells;
  std::map<int, double> rows;
  std::map<int, double> cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cells[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  PairCounts out;
  for (const auto& [key, n] : cells) out.same_both += pairs(n);
  for (const auto& [key, n] : rows) out.same_a += pairs(n);
  for (const auto& [key, n] : cols) out.same_b += pairs(n);
  out.total = pairs(static_cast<double>(a.size()));
  return out;
}

}  // namespace

double adjusted_rand_index(const Labels& a, const Labels& b) {
  if (a.size() < 2) fail(ErrorKind::InvalidArgument, "ARI needs at least two points");
  const PairCounts c = count_pairs(a, b, "adjusted_rand_index");
  const double expected = c.same_a * c.same_b / c.total;
  const double max_index = 0.5 * (c.same_a + c.same_b);
  const double denom = max_index - expected;
  if (denom == 0.0) return c.same_both == max_index ? 1.0 : 0.0;
  return (c.same_both - expected) / denom;
}

double pairwise_f_measure(const Labels& pred, const Labels& truth) {
  const PairCounts c = count_pairs(pred, truth, "pairwise_f_measure");
  const double precision = c.same_a > 0.0 ? c.same_both / c.same_a : 0.0;
  const double recall = c.same_b > 0.0 ? c.same_both / c.same_b : 0.0;
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace ksc
