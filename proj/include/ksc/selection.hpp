#pragma once

#include "ksc/sparse_model.hpp"
#include "ksc/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ksc {

enum class Criterion { Blf, Bas };

std::string_view to_string(Criterion criterion);
Criterion parse_criterion(std::string_view name);

/// min_p n_p / max_p n_p over clusters 0..K-1 (0 if any cluster is empty).
double cluster_balance(const Labels& labels, Index k_clusters);

/// Balanced line fit: eta * linefit + (1 - eta) * balance.
///
/// K > 2: linefit = sum_p (n_p / N) (z1_p / sum z_p - 1/(K-1)) (K-1)/(K-2),
///        z_p the eigenvalues of cluster p's (centered) score covariance.
/// K = 2: linefit = sum_p (n_p / N) |mu_p| / (|mu_p| + sigma_p).
/// Singleton and zero-spread clusters count as a perfect fit; an empty
/// cluster makes the whole criterion 0.
double blf_criterion(const ScoreMatrix& val_scores, const Labels& labels,
                     Index k_clusters, double eta = 0.75);

/// Balanced angular similarity, K >= 3 only:
/// eta * sum_p (n_p / N) mean_{i in p} max(0, cos(z_i, prototype_p))
///   + (1 - eta) * balance.
double bas_criterion(const ScoreMatrix& val_scores, const Labels& labels,
                     const Matrix& prototypes, double eta = 0.75);

/// Parses "lo:hi:steps:log|lin" into its grid values.
std::vector<double> parse_grid(const std::string& spec);
std::vector<double> make_grid(double lo, double hi, int steps, bool log_spacing);

struct TuneConfig {
  Index n_train = 1000;
  Index n_val = 1000;
  double eps_tol = 1e-9;
  Index r_max = 500;
  std::uint64_t seed = 0;
  Criterion criterion = Criterion::Blf;
  double eta = 0.75;
  KernelKind kernel = KernelKind::Rbf;
  Encoding encoding = Encoding::SignCodebook;  ///< BAS always uses Direction
  BiasVariant bias_variant = BiasVariant::Proposed;
};

struct GridPoint {
  Index k_clusters = 0;
  double param = 0.0;
  double value = 0.0;  ///< -inf when training failed
  Index rank = 0;
  std::uint64_t seed = 0;
  double seconds = 0.0;
  std::string failure;
};

struct TuneReport {
  Criterion criterion = Criterion::Blf;
  double eta = 0.75;
  std::vector<GridPoint> grid;       ///< K-major, then parameter order
  std::vector<GridPoint> blf_check;  ///< BAS runs whose best K is 3: BLF at K = 2, 3
  Index best_k = 0;
  double best_param = 0.0;
};

/// Grid search: one seeded shuffle yields disjoint training / validation
/// subsets shared by every grid point. Each point trains on the training
/// subset, assigns the validation subset and evaluates the criterion.
TuneReport tune(const Dataset& data, Index k_min, Index k_max,
                const std::vector<double>& param_grid, const TuneConfig& config);

/// CSV "K,param,criterion,R,seconds", one row per grid point, followed by
/// comment lines for failures and BLF checks and a final "# best" line.
void write_tune_csv(std::ostream& out, const TuneReport& report);

}  // namespace ksc
