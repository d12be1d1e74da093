#pragma once

// Plug-in multi-class LDA and the two reference baselines.
//
// Scores: h_1 = 0 and, for k = 1..K-1,
//     h_{k+1} = -(x - (mu_1 + mu_{k+1}) / 2)' beta_k - log(pi_1 / pi_{k+1}).
// h_k - h_l is the pairwise discriminant of class k against class l, so the
// argmax reproduces every pairwise rule. Ties go to the larger class index.

#include <optional>
#include <vector>

#include "sparselda/model.hpp"

namespace slda {

class ClassifierModel {
 public:
  ClassifierModel(DirectionSet directions, std::vector<Vector> means, std::vector<double> priors);

  const DirectionSet& directions() const noexcept { return directions_; }
  const std::vector<Vector>& means() const noexcept { return means_; }
  const std::vector<double>& priors() const noexcept { return priors_; }
  int num_classes() const noexcept { return static_cast<int>(means_.size()); }
  Eigen::Index num_features() const noexcept { return directions_.num_features(); }

  /// One score per class, h_1 first.
  Vector scores(const Eigen::Ref<const Vector>& x) const;
  int predict(const Eigen::Ref<const Vector>& x) const;

 private:
  DirectionSet directions_;
  std::vector<Vector> means_;
  std::vector<double> priors_;
  Vector offsets_;  // constant part of each score
};

struct PredictionReport {
  std::vector<int> predicted;
  Matrix scores;  // samples x classes
  std::optional<double> error_rate;
};

/// Argmax with ties resolved toward the larger index; returns a 1-based label.
int argmax_label(const Eigen::Ref<const Vector>& scores);

ClassifierModel build_model(const ClassSummaries& cs, const DirectionSet& ds);

int predict(const ClassifierModel& m, const Eigen::Ref<const Vector>& x);

/// Predicts every row of `features`; fills error_rate when truth is given.
PredictionReport evaluate(const ClassifierModel& m, const Matrix& features,
                          const std::vector<int>* truth = nullptr);

PredictionReport evaluate(const ClassifierModel& m, const Dataset& test);

/// Gaussian naive Bayes: per-class feature-wise means and variances (MLE,
/// floored at 1e-12) with empirical priors.
class NaiveBayesModel {
 public:
  NaiveBayesModel(std::vector<Vector> means, std::vector<Vector> variances, std::vector<double> priors);

  const std::vector<Vector>& means() const noexcept { return means_; }
  const std::vector<Vector>& variances() const noexcept { return variances_; }
  const std::vector<double>& priors() const noexcept { return priors_; }
  int num_classes() const noexcept { return static_cast<int>(means_.size()); }
  Eigen::Index num_features() const noexcept { return means_.empty() ? 0 : means_.front().size(); }

  /// Log posterior up to a shared constant.
  Vector scores(const Eigen::Ref<const Vector>& x) const;
  int predict(const Eigen::Ref<const Vector>& x) const;

 private:
  std::vector<Vector> means_;
  std::vector<Vector> variances_;
  std::vector<double> priors_;
};

inline constexpr double kVarianceFloor = 1e-12;

NaiveBayesModel naive_bayes_fit(const Dataset& d);

int naive_bayes_predict(const NaiveBayesModel& m, const Eigen::Ref<const Vector>& x);

PredictionReport evaluate(const NaiveBayesModel& m, const Matrix& features,
                          const std::vector<int>* truth = nullptr);

/// Moore-Penrose inverse of a symmetric matrix; eigenvalues with magnitude
/// below rel_tol * max |eigenvalue| are dropped.
Matrix symmetric_pinv(const Matrix& S, double rel_tol = 1e-10);

/// beta_k = S^+ delta_k.
DirectionSet pseudoinverse_lda_fit(const Matrix& S, const ClassSummaries& cs);

}  // namespace slda
