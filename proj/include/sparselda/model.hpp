#pragma once

// Labeled samples and the sufficient statistics every estimator consumes.
//
// Labels are dense 1-based integers 1..K. The base class for mean
// differences is class 1: delta_k = mean_1 - mean_{k+1}, k = 1..K-1.

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace slda {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class Dataset {
 public:
  /// Validates: labels in 1..num_classes, every class present, K >= 2,
  /// one label per feature row, p >= 1.
  Dataset(Matrix features, std::vector<int> labels, int num_classes);

  /// Infers K as the largest label.
  static Dataset from_labels(Matrix features, std::vector<int> labels);

  const Matrix& features() const noexcept { return features_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  int num_classes() const noexcept { return num_classes_; }
  Eigen::Index num_samples() const noexcept { return features_.rows(); }
  Eigen::Index num_features() const noexcept { return features_.cols(); }
  int class_count(int k) const;

  /// Rows selected by index, keeping K. Throws if a class ends up empty.
  Dataset subset(std::span<const Eigen::Index> rows) const;

 private:
  Matrix features_;
  std::vector<int> labels_;
  int num_classes_;
};

struct ClassSummaries {
  std::vector<int> counts;     // n_k
  std::vector<Vector> means;   // mu_k
  std::vector<double> priors;  // n_k / N
  std::vector<Vector> deltas;  // mu_1 - mu_{k+1}, K-1 entries

  int num_classes() const noexcept { return static_cast<int>(counts.size()); }
  Eigen::Index num_features() const noexcept { return means.empty() ? 0 : means.front().size(); }
  int num_directions() const noexcept { return num_classes() - 1; }

  /// p x K' matrix with column k = delta_k.
  Matrix delta_matrix() const;
};

/// Pooled within-class covariance, normalized by N - K.
struct PooledScatter {
  Matrix S;
  Eigen::Index dof = 0;

  Eigen::Index dim() const noexcept { return S.rows(); }
};

/// Columns are the discriminant directions beta_k; row j is the per-feature
/// group beta^j.
class DirectionSet {
 public:
  DirectionSet() = default;
  explicit DirectionSet(Matrix coefficients) : coef_(std::move(coefficients)) {}
  DirectionSet(Eigen::Index p, Eigen::Index num_directions) : coef_(Matrix::Zero(p, num_directions)) {}

  Eigen::Index num_features() const noexcept { return coef_.rows(); }
  Eigen::Index num_directions() const noexcept { return coef_.cols(); }

  const Matrix& matrix() const noexcept { return coef_; }
  Matrix& matrix() noexcept { return coef_; }

  auto column(Eigen::Index k) const { return coef_.col(k); }
  auto row(Eigen::Index j) const { return coef_.row(j); }

  /// Nonzero rows (0-based), the joint support T.
  std::vector<Eigen::Index> row_support() const;
  /// Nonzero entries of column k (0-based), the support T_k.
  std::vector<Eigen::Index> column_support(Eigen::Index k) const;

 private:
  Matrix coef_;
};

ClassSummaries summarize(const Dataset& d);

PooledScatter pooled_scatter(const Dataset& d, const ClassSummaries& cs);

/// Euclidean norm of every row of the direction matrix.
Vector group_norms(const DirectionSet& ds);

}  // namespace slda
