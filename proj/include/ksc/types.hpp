#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace ksc {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Labels = std::vector<int>;

/// N x d feature rows, stored column-major so that each feature is a
/// contiguous run over the points. The kernel loops vectorize across points.
struct Dataset {
  Matrix rows;
  std::optional<Labels> labels;

  Index size() const { return rows.rows(); }
  Index dim() const { return rows.cols(); }

  /// Copies the given rows (and labels, if any) in the given order.
  Dataset subset(const std::vector<Index>& indices) const;
};

/// Rows are points, columns are score dimensions (K-1 of them).
using ScoreMatrix = Matrix;

}  // namespace ksc
