#include "ksc/sparse_model.hpp"

#include "ksc/error.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <string>

namespace ksc {
namespace {

int hamming(const std::vector<std::int8_t>& pattern, const Matrix& codebook,
            Index p) {
  int d = 0;
  for (Index c = 0; c < codebook.cols(); ++c)
    if ((codebook(p, c) >= 0.0 ? 1 : -1) != pattern[static_cast<std::size_t>(c)]) ++d;
  return d;
}

Index nearest_code_word(const std::vector<std::int8_t>& pattern,
                        const Matrix& codebook) {
  Index best = 0;
  int best_d = hamming(pattern, codebook, 0);
  for (Index p = 1; p < codebook.rows(); ++p) {
    const int d = hamming(pattern, codebook, p);
    if (d < best_d) {
      best_d = d;
      best = p;
    }
  }
  return best;
}

Matrix sign_codebook(const ScoreMatrix& s, Index k_clusters) {
  struct Tally {
    Index count = 0;
    Index first = 0;
  };
  std::map<std::vector<std::int8_t>, Tally> tallies;
  for (Index i = 0; i < s.rows(); ++i) {
    auto [it, inserted] = tallies.try_emplace(sign_pattern(s, i), Tally{0, i});
    ++it->second.count;
  }
  if (static_cast<Index>(tallies.size()) < k_clusters)
    fail(ErrorKind::Training,
         "only " + std::to_string(tallies.size()) + " distinct sign patterns for K = " +
             std::to_string(k_clusters) + " clusters");

  std::vector<std::pair<const std::vector<std::int8_t>*, Tally>> ranked;
  for (const auto& [pattern, tally] : tallies) ranked.emplace_back(&pattern, tally);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second.count != b.second.count) return a.second.count > b.second.count;
    return a.second.first < b.second.first;
  });

  Matrix codebook(k_clusters, s.cols());
  for (Index p = 0; p < k_clusters; ++p)
    for (Index c = 0; c < s.cols(); ++c)
      codebook(p, c) = (*ranked[static_cast<std::size_t>(p)].first)[static_cast<std::size_t>(c)];
  return codebook;
}

template <typename F>
auto run_stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Training && std::string(e.what()).rfind("stage ", 0) == 0)
      throw;
    throw Error(ErrorKind::Training, std::string("stage ") + name + ": " + e.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string_view to_string(Encoding encoding) {
  return encoding == Encoding::SignCodebook ? "sign" : "direction";
}

std::string_view to_string(BiasVariant variant) {
  return variant == BiasVariant::Proposed ? "proposed" : "original";
}

Encoding parse_encoding(std::string_view name) {
  if (name == "sign") return Encoding::SignCodebook;
  if (name == "direction") return Encoding::Direction;
  fail(ErrorKind::InvalidArgument, "unknown encoding '" + std::string(name) + "'");
}

BiasVariant parse_bias_variant(std::string_view name) {
  if (name == "proposed") return BiasVariant::Proposed;
  if (name == "original") return BiasVariant::Original;
  fail(ErrorKind::InvalidArgument, "unknown bias variant '" + std::string(name) + "'");
}

void SparseKscModel::validate() const {
  kernel.validate();
  const Index r = reduced_points.rows();
  const Index m = k_clusters - 1;
  if (k_clusters < 2) fail(ErrorKind::Format, "model needs K >= 2");
  if (r < 1) fail(ErrorKind::Format, "model has an empty reduced set");
  if (xi.rows() != r || xi.cols() != m)
    fail(ErrorKind::Format, "XI has shape inconsistent with R and K");
  if (bias.size() != m) fail(ErrorKind::Format, "BIAS length is not K - 1");
  if (prototypes.rows() != k_clusters || prototypes.cols() != m)
    fail(ErrorKind::Format, "prototype table is not K x (K - 1)");
  if (!reduced_points.allFinite() || !xi.allFinite() || !bias.allFinite() ||
      !prototypes.allFinite())
    fail(ErrorKind::Format, "model contains non-finite numbers");
}

Matrix solve_reduced_system(const Matrix& k_rr, const Matrix& rhs) {
  if (k_rr.rows() != k_rr.cols() || rhs.rows() != k_rr.rows())
    fail(ErrorKind::DimensionMismatch, "reduced system shapes are inconsistent");
  const Index r = k_rr.rows();

  auto attempt = [&](const Matrix& a, Matrix& out) {
    Eigen::LLT<Matrix> llt(a);
    if (llt.info() != Eigen::Success) return false;
    const Vector diag = llt.matrixLLT().diagonal();
    const double lo = diag.minCoeff();
    const double hi = diag.maxCoeff();
    if (!(lo > 0.0) || lo * lo < 1e-14 * hi * hi) return false;
    out = llt.solve(rhs);
    return out.allFinite();
  };

  Matrix xi;
  if (attempt(k_rr, xi)) return xi;
  const double ridge = 1e-10 * k_rr.trace() / static_cast<double>(r);
  Matrix regularized = k_rr;
  regularized.diagonal().array() += ridge;
  if (attempt(regularized, xi)) return xi;
  // Exactly duplicated reduced points leave a singular K_RR that a 1e-10
  // ridge cannot lift above the conditioning guard; accept the ridge solve
  // when the factorization itself succeeded.
  Eigen::LLT<Matrix> llt(regularized);
  if (llt.info() == Eigen::Success) {
    xi = llt.solve(rhs);
    if (xi.allFinite()) return xi;
  }
  fail(ErrorKind::Numerical, "reduced-set system is singular even with ridge");
}

Matrix solve_reduced_coefficients(const Matrix& k_rr, const Matrix& k_rt,
                                  const Matrix& betas) {
  if (k_rt.cols() != betas.rows())
    fail(ErrorKind::DimensionMismatch, "K_RT columns do not match beta rows");
  return solve_reduced_system(k_rr, k_rt * betas);
}

Vector bias_terms_proposed(const Vector& lambdas, const Matrix& betas,
                           const Vector& degrees, Index n_tr) {
  if (betas.cols() != lambdas.size() || betas.rows() != degrees.size())
    fail(ErrorKind::DimensionMismatch, "bias_terms_proposed: shape mismatch");
  if (n_tr < 1) fail(ErrorKind::InvalidArgument, "bias_terms_proposed: n_tr < 1");
  const Vector weighted = betas.transpose() * degrees;
  return (lambdas.array() - 1.0) * weighted.array() / static_cast<double>(n_tr);
}

Vector bias_terms_original(const Matrix& xi, const Matrix& k_rr) {
  if (k_rr.rows() != k_rr.cols() || xi.rows() != k_rr.rows())
    fail(ErrorKind::DimensionMismatch, "bias_terms_original: shape mismatch");
  const Vector reduced_degrees = k_rr.rowwise().sum();
  if (!(reduced_degrees.minCoeff() > 0.0))
    fail(ErrorKind::Numerical, "nonpositive reduced-set degree");
  const Vector inv = reduced_degrees.cwiseInverse();
  return -(inv.transpose() * (k_rr * xi)).transpose() / inv.sum();
}

ScoreMatrix scores(const SparseKscModel& model, const Matrix& points) {
  if (points.cols() != model.dim())
    fail(ErrorKind::DimensionMismatch,
         "data has " + std::to_string(points.cols()) + " features, model expects " +
             std::to_string(model.dim()));
  check_kernel_input(model.kernel, points);
  ScoreMatrix z = kernel_apply(model.kernel, points, model.reduced_points, model.xi);
  z.rowwise() += model.bias.transpose();
  return z;
}

ScoreMatrix scores(const SparseKscModel& model, const Dataset& points) {
  return scores(model, points.rows);
}

std::vector<std::int8_t> sign_pattern(const ScoreMatrix& s, Index row) {
  std::vector<std::int8_t> out(static_cast<std::size_t>(s.cols()));
  for (Index c = 0; c < s.cols(); ++c) out[static_cast<std::size_t>(c)] = s(row, c) >= 0.0 ? 1 : -1;
  return out;
}

Matrix fit_prototypes(const ScoreMatrix& train_scores, Encoding encoding,
                      Index k_clusters) {
  if (k_clusters < 2) fail(ErrorKind::InvalidArgument, "fit_prototypes: K < 2");
  if (train_scores.cols() != k_clusters - 1)
    fail(ErrorKind::DimensionMismatch, "score matrix must have K - 1 columns");
  const Matrix codebook = sign_codebook(train_scores, k_clusters);
  if (encoding == Encoding::SignCodebook) return codebook;

  Matrix sums = Matrix::Zero(k_clusters, train_scores.cols());
  for (Index i = 0; i < train_scores.rows(); ++i) {
    const Index p = nearest_code_word(sign_pattern(train_scores, i), codebook);
    sums.row(p) += train_scores.row(i);
  }
  Matrix prototypes(k_clusters, train_scores.cols());
  for (Index p = 0; p < k_clusters; ++p) {
    const double norm = sums.row(p).norm();
    if (norm > 0.0 && std::isfinite(norm))
      prototypes.row(p) = sums.row(p) / norm;
    else
      prototypes.row(p) = codebook.row(p).normalized();
  }
  return prototypes;
}

Labels assign(const SparseKscModel& model, const ScoreMatrix& s) {
  if (s.cols() != model.k_clusters - 1)
    fail(ErrorKind::DimensionMismatch, "score matrix must have K - 1 columns");
  Labels labels(static_cast<std::size_t>(s.rows()));
  for (Index i = 0; i < s.rows(); ++i) {
    Index best = 0;
    if (model.encoding == Encoding::SignCodebook) {
      best = nearest_code_word(sign_pattern(s, i), model.prototypes);
    } else {
      const double norm = s.row(i).norm();
      double best_cos = -2.0;
      for (Index p = 0; p < model.k_clusters; ++p) {
        const double cos = norm > 0.0 ? s.row(i).dot(model.prototypes.row(p)) / norm : 0.0;
        if (cos > best_cos) {
          best_cos = cos;
          best = p;
        }
      }
    }
    labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return labels;
}

Labels predict(const SparseKscModel& model, const Matrix& points) {
  return assign(model, scores(model, points));
}

std::vector<Index> shuffled_prefix(Index total, Index n, std::uint64_t seed) {
  if (n < 0 || n > total)
    fail(ErrorKind::InvalidArgument,
         "cannot sample " + std::to_string(n) + " of " + std::to_string(total) + " rows");
  std::vector<Index> idx(static_cast<std::size_t>(total));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::mt19937_64 rng(seed);
  for (Index i = 0; i < n && i + 1 < total; ++i) {
    std::uniform_int_distribution<Index> pick(i, total - 1);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
  }
  idx.resize(static_cast<std::size_t>(n));
  return idx;
}

std::vector<Index> sample_without_replacement(Index total, Index n,
                                              std::uint64_t seed) {
  if (n == total && total >= 0) {
    std::vector<Index> idx(static_cast<std::size_t>(total));
    std::iota(idx.begin(), idx.end(), Index{0});
    return idx;
  }
  auto idx = shuffled_prefix(total, n, seed);
  std::sort(idx.begin(), idx.end());
  return idx;
}

SparseKscModel build_model(const Dataset& training, const IcdResult& icd_result,
                           const TrainConfig& config, Vector* lambdas_out) {
  const Index k = config.k_clusters;
  if (k < 2) fail(ErrorKind::InvalidArgument, "K must be at least 2");
  const Index n_tr = training.size();

  const Vector degrees = run_stage("degrees", [&] { return approx_degrees(icd_result.factor); });
  const EigenBundle eig = run_stage("eigensolve", [&] {
    return leading_eigenpairs_proposed(center_scale(icd_result.factor, degrees), degrees, k - 1);
  });

  SparseKscModel model;
  model.kernel = config.kernel;
  model.k_clusters = k;
  model.encoding = config.encoding;
  model.bias_variant = config.bias_variant;
  model.n_train = n_tr;
  model.seed = config.seed;
  model.reduced_points = training.subset(icd_result.pivots).rows;

  Matrix k_rr;
  run_stage("reduced-coefficients", [&] {
    k_rr = kernel_cross(config.kernel, model.reduced_points, model.reduced_points);
    const Matrix rhs = kernel_apply(config.kernel, model.reduced_points, training.rows, eig.betas);
    model.xi = solve_reduced_system(k_rr, rhs);
    return 0;
  });
  model.bias = run_stage("bias", [&] {
    return config.bias_variant == BiasVariant::Proposed
               ? bias_terms_proposed(eig.lambdas, eig.betas, degrees, n_tr)
               : bias_terms_original(model.xi, k_rr);
  });
  model.prototypes = run_stage("prototypes", [&] {
    return fit_prototypes(scores(model, training.rows), config.encoding, k);
  });
  if (lambdas_out) *lambdas_out = eig.lambdas;
  return model;
}

TrainResult train(const Dataset& data, const TrainConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const Index n_tr = config.n_train > 0 ? config.n_train : data.size();
  TrainResult out;
  out.training_indices = run_stage("sampling", [&] {
    if (config.k_clusters < 2) fail(ErrorKind::InvalidArgument, "K must be at least 2");
    return sample_without_replacement(data.size(), n_tr, config.seed);
  });
  const Dataset training = data.subset(out.training_indices);
  const Index r_max = std::min(config.r_max, training.size());
  const IcdResult decomposition = run_stage("icd", [&] {
    return icd(config.kernel, training, config.eps_tol, r_max);
  });
  out.icd_seconds = seconds_since(start);
  out.rank = decomposition.rank();
  out.icd_eps = decomposition.eps_final;
  out.model = build_model(training, decomposition, config, &out.lambdas);
  out.seconds = seconds_since(start);
  return out;
}

}  // namespace ksc
