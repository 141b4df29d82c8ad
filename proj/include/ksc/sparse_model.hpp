#pragma once

#include "ksc/eigensolver.hpp"
#include "ksc/kernels.hpp"
#include "ksc/lowrank.hpp"
#include "ksc/types.hpp"

#include <cstdint>
#include <string_view>

namespace ksc {

enum class Encoding { SignCodebook, Direction };
enum class BiasVariant { Proposed, Original };

std::string_view to_string(Encoding encoding);
std::string_view to_string(BiasVariant variant);
Encoding parse_encoding(std::string_view name);
BiasVariant parse_bias_variant(std::string_view name);

/// Sparse clustering model: scores z(x) = sum_r K(x, x~_r) xi_r + b.
struct SparseKscModel {
  KernelSpec kernel;
  Index k_clusters = 2;
  Encoding encoding = Encoding::SignCodebook;
  BiasVariant bias_variant = BiasVariant::Proposed;
  Matrix reduced_points;  ///< R x d
  Matrix xi;              ///< R x (K-1)
  Vector bias;            ///< K-1
  /// K x (K-1). SignCodebook: entries +-1, row p is cluster p's code word.
  /// Direction: unit-norm prototype directions.
  Matrix prototypes;

  // Provenance, persisted with the model.
  Index n_train = 0;
  std::uint64_t seed = 0;

  Index reduced_size() const { return reduced_points.rows(); }
  Index dim() const { return reduced_points.cols(); }

  /// Throws Format on a structurally inconsistent model.
  void validate() const;
};

/// Solves K_RR xi = rhs column by column with a Cholesky factorization of
/// K_RR; on failure retries once with ridge 1e-10 Tr(K_RR) / R.
Matrix solve_reduced_system(const Matrix& k_rr, const Matrix& rhs);

/// K_RR xi = K_RT beta.
Matrix solve_reduced_coefficients(const Matrix& k_rr, const Matrix& k_rt,
                                  const Matrix& betas);

/// b_k = (lambda_k - 1) (sum_i d_i beta_ik) / n_tr.
Vector bias_terms_proposed(const Vector& lambdas, const Matrix& betas,
                           const Vector& degrees, Index n_tr);

/// b_k = -1^T D_R^-1 K_RR xi_k / (1^T D_R^-1 1), D_R = diag(K_RR 1).
Vector bias_terms_original(const Matrix& xi, const Matrix& k_rr);

/// Score rows for `points`, O(N R (d + K - 1)).
ScoreMatrix scores(const SparseKscModel& model, const Matrix& points);
ScoreMatrix scores(const SparseKscModel& model, const Dataset& points);

/// Sign code word of a score row; sign(0) counts as +.
std::vector<std::int8_t> sign_pattern(const ScoreMatrix& s, Index row);

/// SignCodebook: K most frequent sign patterns (count descending, ties by
/// first occurrence). Direction: rows grouped by nearest code word
/// (Hamming), prototype = normalized group mean.
Matrix fit_prototypes(const ScoreMatrix& train_scores, Encoding encoding,
                      Index k_clusters);

/// SignCodebook: argmin Hamming distance. Direction: argmax cosine.
/// Ties go to the lowest cluster index.
Labels assign(const SparseKscModel& model, const ScoreMatrix& s);

/// Convenience: assign(model, scores(model, points)).
Labels predict(const SparseKscModel& model, const Matrix& points);

struct TrainConfig {
  Index k_clusters = 2;
  KernelSpec kernel;
  double eps_tol = 1e-9;
  Index r_max = 500;
  Index n_train = 0;  ///< 0 means all rows
  std::uint64_t seed = 0;
  Encoding encoding = Encoding::SignCodebook;
  BiasVariant bias_variant = BiasVariant::Proposed;
};

struct TrainResult {
  SparseKscModel model;
  Vector lambdas;
  Index rank = 0;
  double icd_eps = 0.0;
  double icd_seconds = 0.0;
  double seconds = 0.0;  ///< whole training phase, ICD included
  std::vector<Index> training_indices;
};

/// First n entries of a seeded Fisher-Yates shuffle of 0..total-1.
std::vector<Index> shuffled_prefix(Index total, Index n, std::uint64_t seed);

/// Seeded uniform sample of n rows without replacement. n == total returns
/// the identity order; otherwise the sample is sorted ascending.
std::vector<Index> sample_without_replacement(Index total, Index n,
                                              std::uint64_t seed);

/// Model construction from a precomputed ICD of `training`.
SparseKscModel build_model(const Dataset& training, const IcdResult& icd_result,
                           const TrainConfig& config, Vector* lambdas_out = nullptr);

/// Full pipeline: subsample, ICD, eigenpairs, reduced coefficients, bias,
/// training scores and prototypes. Failures are rethrown as Training errors
/// naming the stage.
TrainResult train(const Dataset& data, const TrainConfig& config);

}  // namespace ksc
