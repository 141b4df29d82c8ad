#include "ksc/selection.hpp"

#include "ksc/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

namespace ksc {
namespace {

std::vector<Index> cluster_sizes(const Labels& labels, Index k) {
  std::vector<Index> n(static_cast<std::size_t>(k), 0);
  for (int l : labels) {
    if (l < 0 || l >= k)
      fail(ErrorKind::InvalidArgument,
           "cluster label " + std::to_string(l) + " outside [0, " + std::to_string(k) + ")");
    ++n[static_cast<std::size_t>(l)];
  }
  return n;
}

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) fail(ErrorKind::InvalidArgument, "eta must lie in [0, 1]");
}

Matrix rows_of(const ScoreMatrix& s, const Labels& labels, int p, Index count) {
  Matrix out(count, s.cols());
  Index r = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == p) out.row(r++) = s.row(static_cast<Index>(i));
  return out;
}

double line_fit_two(const Matrix& rows) {
  if (rows.rows() == 1) return 1.0;
  const double mu = rows.col(0).mean();
  const double var = (rows.col(0).array() - mu).square().mean();
  const double denom = std::abs(mu) + std::sqrt(var);
  return denom > 0.0 ? std::abs(mu) / denom : 1.0;
}

double line_fit_multi(const Matrix& rows, Index k) {
  if (rows.rows() == 1) return 1.0;
  const Matrix centered = rows.rowwise() - rows.colwise().mean();
  const Matrix cov = centered.transpose() * centered / static_cast<double>(rows.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov, Eigen::EigenvaluesOnly);
  const Vector z = eig.eigenvalues().cwiseMax(0.0);
  const double total = z.sum();
  if (!(total > 0.0)) return 1.0;
  const double km1 = static_cast<double>(k - 1);
  return (z.maxCoeff() / total - 1.0 / km1) * km1 / (km1 - 1.0);
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool better(const GridPoint& a, const GridPoint& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.k_clusters != b.k_clusters) return a.k_clusters < b.k_clusters;
  return a.param < b.param;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string_view to_string(Criterion criterion) {
  return criterion == Criterion::Blf ? "blf" : "bas";
}

Criterion parse_criterion(std::string_view name) {
  if (name == "blf") return Criterion::Blf;
  if (name == "bas") return Criterion::Bas;
  fail(ErrorKind::InvalidArgument, "unknown criterion '" + std::string(name) + "'");
}

double cluster_balance(const Labels& labels, Index k_clusters) {
  const auto n = cluster_sizes(labels, k_clusters);
  const auto [lo, hi] = std::minmax_element(n.begin(), n.end());
  if (*lo == 0) return 0.0;
  return static_cast<double>(*lo) / static_cast<double>(*hi);
}

double blf_criterion(const ScoreMatrix& val_scores, const Labels& labels,
                     Index k_clusters, double eta) {
  check_eta(eta);
  if (k_clusters < 2) fail(ErrorKind::InvalidArgument, "BLF needs K >= 2");
  if (static_cast<Index>(labels.size()) != val_scores.rows())
    fail(ErrorKind::DimensionMismatch, "BLF: label count does not match score rows");
  if (val_scores.cols() != k_clusters - 1)
    fail(ErrorKind::DimensionMismatch, "BLF: scores must have K - 1 columns");
  const auto n = cluster_sizes(labels, k_clusters);
  if (*std::min_element(n.begin(), n.end()) == 0) return 0.0;

  const double total = static_cast<double>(labels.size());
  double linefit = 0.0;
  for (Index p = 0; p < k_clusters; ++p) {
    const Index np = n[static_cast<std::size_t>(p)];
    const Matrix rows = rows_of(val_scores, labels, static_cast<int>(p), np);
    const double fit = k_clusters == 2 ? line_fit_two(rows) : line_fit_multi(rows, k_clusters);
    linefit += static_cast<double>(np) / total * fit;
  }
  return eta * linefit + (1.0 - eta) * cluster_balance(labels, k_clusters);
}

double bas_criterion(const ScoreMatrix& val_scores, const Labels& labels,
                     const Matrix& prototypes, double eta) {
  check_eta(eta);
  const Index k = prototypes.rows();
  if (k < 3)
    fail(ErrorKind::InvalidArgument,
         "BAS requires K > 2; use the BLF criterion for K = 2");
  if (static_cast<Index>(labels.size()) != val_scores.rows())
    fail(ErrorKind::DimensionMismatch, "BAS: label count does not match score rows");
  if (prototypes.cols() != val_scores.cols())
    fail(ErrorKind::DimensionMismatch, "BAS: prototype dimension does not match scores");
  const auto n = cluster_sizes(labels, k);
  if (*std::min_element(n.begin(), n.end()) == 0) return 0.0;

  std::vector<double> cos_sum(static_cast<std::size_t>(k), 0.0);
  for (Index i = 0; i < val_scores.rows(); ++i) {
    const int p = labels[static_cast<std::size_t>(i)];
    const double zn = val_scores.row(i).norm();
    const double pn = prototypes.row(p).norm();
    if (zn > 0.0 && pn > 0.0)
      cos_sum[static_cast<std::size_t>(p)] +=
          std::max(0.0, val_scores.row(i).dot(prototypes.row(p)) / (zn * pn));
  }
  const double total = static_cast<double>(labels.size());
  double angular = 0.0;
  for (Index p = 0; p < k; ++p) {
    const double np = static_cast<double>(n[static_cast<std::size_t>(p)]);
    angular += np / total * (cos_sum[static_cast<std::size_t>(p)] / np);
  }
  return eta * angular + (1.0 - eta) * cluster_balance(labels, k);
}

std::vector<double> make_grid(double lo, double hi, int steps, bool log_spacing) {
  if (steps < 1) fail(ErrorKind::InvalidArgument, "grid needs at least one step");
  if (!(lo > 0.0) || !(hi >= lo))
    fail(ErrorKind::InvalidArgument, "grid needs 0 < lo <= hi");
  std::vector<double> out;
  if (steps == 1) return {lo};
  for (int i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / (steps - 1);
    out.push_back(log_spacing ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                              : lo + t * (hi - lo));
  }
  return out;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 4 || (parts[3] != "log" && parts[3] != "lin"))
    fail(ErrorKind::InvalidArgument, "grid must look like lo:hi:steps:log|lin, got '" + spec + "'");
  try {
    return make_grid(std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2]),
                     parts[3] == "log");
  } catch (const std::logic_error&) {
    fail(ErrorKind::InvalidArgument, "grid has non-numeric bounds: '" + spec + "'");
  }
}

TuneReport tune(const Dataset& data, Index k_min, Index k_max,
                const std::vector<double>& param_grid, const TuneConfig& config) {
  if (param_grid.empty()) fail(ErrorKind::InvalidArgument, "empty parameter grid");
  if (k_min < 2 || k_max < k_min) fail(ErrorKind::InvalidArgument, "K range must satisfy 2 <= kmin <= kmax");
  if (config.criterion == Criterion::Bas && k_min < 3)
    fail(ErrorKind::InvalidArgument, "BAS requires K > 2 (got kmin = " + std::to_string(k_min) + ")");
  if (config.n_train < 1 || config.n_val < 1 || config.n_train + config.n_val > data.size())
    fail(ErrorKind::InvalidArgument, "need 1 <= ntr, 1 <= nval and ntr + nval <= N");
  check_eta(config.eta);

  const auto order = shuffled_prefix(data.size(), config.n_train + config.n_val, config.seed);
  std::vector<Index> train_idx(order.begin(), order.begin() + config.n_train);
  std::vector<Index> val_idx(order.begin() + config.n_train, order.end());
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(val_idx.begin(), val_idx.end());
  const Dataset training = data.subset(train_idx);
  const Dataset validation = data.subset(val_idx);

  const Encoding encoding =
      config.criterion == Criterion::Bas ? Encoding::Direction : config.encoding;

  // One ICD per kernel parameter, shared by every K.
  auto evaluate_param = [&](double param, const std::vector<Index>& ks,
                            Criterion criterion) {
    std::vector<GridPoint> points;
    const auto t0 = std::chrono::steady_clock::now();
    TrainConfig tc;
    tc.kernel = KernelSpec{config.kernel, param};
    tc.eps_tol = config.eps_tol;
    tc.r_max = std::min(config.r_max, training.size());
    tc.n_train = training.size();
    tc.seed = config.seed;
    tc.encoding = encoding;
    tc.bias_variant = config.bias_variant;

    IcdResult decomposition;
    std::string icd_failure;
    try {
      decomposition = icd(tc.kernel, training, tc.eps_tol, tc.r_max);
    } catch (const Error& e) {
      icd_failure = std::string("stage icd: ") + e.what();
    }
    const double icd_seconds = elapsed(t0);

    for (Index k : ks) {
      GridPoint gp;
      gp.k_clusters = k;
      gp.param = param;
      gp.seed = config.seed;
      gp.rank = decomposition.rank();
      const auto t1 = std::chrono::steady_clock::now();
      if (!icd_failure.empty()) {
        gp.value = -std::numeric_limits<double>::infinity();
        gp.failure = icd_failure;
      } else {
        try {
          tc.k_clusters = k;
          const SparseKscModel model = build_model(training, decomposition, tc);
          const ScoreMatrix z = scores(model, validation);
          const Labels labels = assign(model, z);
          gp.value = criterion == Criterion::Blf
                         ? blf_criterion(z, labels, k, config.eta)
                         : bas_criterion(z, labels, model.prototypes, config.eta);
        } catch (const Error& e) {
          gp.value = -std::numeric_limits<double>::infinity();
          gp.failure = e.what();
        }
      }
      gp.seconds = icd_seconds + elapsed(t1);
      points.push_back(gp);
    }
    return points;
  };

  std::vector<Index> ks;
  for (Index k = k_min; k <= k_max; ++k) ks.push_back(k);

  TuneReport report;
  report.criterion = config.criterion;
  report.eta = config.eta;
  report.grid.resize(ks.size() * param_grid.size());
  for (std::size_t p = 0; p < param_grid.size(); ++p) {
    const auto points = evaluate_param(param_grid[p], ks, config.criterion);
    for (std::size_t k = 0; k < ks.size(); ++k) report.grid[k * param_grid.size() + p] = points[k];
  }

  const GridPoint* best = nullptr;
  for (const auto& gp : report.grid)
    if (std::isfinite(gp.value) && (!best || better(gp, *best))) best = &gp;
  if (!best) fail(ErrorKind::Training, "every grid point failed to train");
  report.best_k = best->k_clusters;
  report.best_param = best->param;

  if (config.criterion == Criterion::Bas && report.best_k == 3) {
    const GridPoint* best2 = nullptr;
    const GridPoint* best3 = nullptr;
    for (double param : param_grid)
      for (const auto& gp : evaluate_param(param, {2, 3}, Criterion::Blf)) report.blf_check.push_back(gp);
    for (const auto& gp : report.blf_check) {
      if (!std::isfinite(gp.value)) continue;
      const GridPoint*& slot = gp.k_clusters == 2 ? best2 : best3;
      if (!slot || better(gp, *slot)) slot = &gp;
    }
    if (best2 && (!best3 || best2->value > best3->value)) {
      report.best_k = 2;
      report.best_param = best2->param;
    }
  }
  return report;
}

void write_tune_csv(std::ostream& out, const TuneReport& report) {
  out << "K,param,criterion,R,seconds\n";
  for (const auto& gp : report.grid)
    out << gp.k_clusters << ',' << fmt(gp.param) << ','
        << (std::isfinite(gp.value) ? fmt(gp.value) : std::string("-inf")) << ','
        << gp.rank << ',' << fmt(gp.seconds) << '\n';
  for (const auto& gp : report.grid)
    if (!gp.failure.empty())
      out << "# failed K=" << gp.k_clusters << " param=" << fmt(gp.param) << ": " << gp.failure << '\n';
  for (const auto& gp : report.blf_check)
    out << "# blf K=" << gp.k_clusters << " param=" << fmt(gp.param) << " value="
        << (std::isfinite(gp.value) ? fmt(gp.value) : std::string("-inf")) << '\n';
  out << "# best K=" << report.best_k << " param=" << fmt(report.best_param)
      << " criterion=" << to_string(report.criterion) << " eta=" << fmt(report.eta) << '\n';
}

}  // namespace ksc
