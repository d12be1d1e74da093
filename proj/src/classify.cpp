#include "sparselda/classify.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "sparselda/error.hpp"

namespace slda {

namespace {

void check_priors(const std::vector<double>& priors) {
  for (double p : priors)
    if (!(p > 0.0)) throw Error(Errc::invalid_argument, "class priors must be positive");
  const double total = std::accumulate(priors.begin(), priors.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) throw Error(Errc::invalid_argument, "class priors must sum to 1");
}

}  // namespace

int argmax_label(const Eigen::Ref<const Vector>& scores) {
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < scores.size(); ++k)
    if (scores(k) >= scores(best)) best = k;
  return static_cast<int>(best) + 1;
}

ClassifierModel::ClassifierModel(DirectionSet directions, std::vector<Vector> means,
                                 std::vector<double> priors)
    : directions_(std::move(directions)), means_(std::move(means)), priors_(std::move(priors)) {
  const int K = static_cast<int>(means_.size());
  if (K < 2) throw Error(Errc::invalid_argument, "classifier needs at least two classes");
  if (static_cast<int>(priors_.size()) != K)
    throw Error(Errc::dimension_mismatch, "one prior per class required");
  if (directions_.num_directions() != K - 1)
    throw Error(Errc::dimension_mismatch, "direction count must be K - 1");
  for (const auto& mu : means_)
    if (mu.size() != directions_.num_features())
      throw Error(Errc::dimension_mismatch, "class mean length does not match directions");
  check_priors(priors_);

  offsets_ = Vector::Zero(K);
  for (int k = 1; k < K; ++k) {
    const auto beta = directions_.column(k - 1);
    offsets_(k) = (0.5 * (means_[0] + means_[k])).dot(beta) - std::log(priors_[0] / priors_[k]);
  }
}

Vector ClassifierModel::scores(const Eigen::Ref<const Vector>& x) const {
  if (x.size() != num_features()) throw Error(Errc::dimension_mismatch, "sample length does not match model");
  Vector h = offsets_;
  for (int k = 1; k < num_classes(); ++k) h(k) -= x.dot(directions_.column(k - 1));
  return h;
}

int ClassifierModel::predict(const Eigen::Ref<const Vector>& x) const { return argmax_label(scores(x)); }

ClassifierModel build_model(const ClassSummaries& cs, const DirectionSet& ds) {
  if (ds.num_features() != cs.num_features())
    throw Error(Errc::dimension_mismatch, "directions and class means differ in feature count");
  return ClassifierModel(ds, cs.means, cs.priors);
}

int predict(const ClassifierModel& m, const Eigen::Ref<const Vector>& x) { return m.predict(x); }

namespace {

template <class Model>
PredictionReport evaluate_rows(const Model& m, const Matrix& features, const std::vector<int>* truth) {
  if (features.rows() == 0) throw Error(Errc::invalid_argument, "empty dataset");
  if (features.cols() != m.num_features())
    throw Error(Errc::dimension_mismatch, "test features do not match model");
  if (truth != nullptr && static_cast<Eigen::Index>(truth->size()) != features.rows())
    throw Error(Errc::dimension_mismatch, "label count does not match sample count");

  PredictionReport rep;
  rep.scores.resize(features.rows(), m.num_classes());
  rep.predicted.reserve(static_cast<std::size_t>(features.rows()));
  std::size_t wrong = 0;
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    const Vector h = m.scores(features.row(i).transpose());
    rep.scores.row(i) = h.transpose();
    const int label = argmax_label(h);
    rep.predicted.push_back(label);
    if (truth != nullptr && (*truth)[static_cast<std::size_t>(i)] != label) ++wrong;
  }
  if (truth != nullptr) rep.error_rate = static_cast<double>(wrong) / static_cast<double>(features.rows());
  return rep;
}

}  // namespace

PredictionReport evaluate(const ClassifierModel& m, const Matrix& features, const std::vector<int>* truth) {
  return evaluate_rows(m, features, truth);
}

PredictionReport evaluate(const ClassifierModel& m, const Dataset& test) {
  return evaluate_rows(m, test.features(), &test.labels());
}

NaiveBayesModel::NaiveBayesModel(std::vector<Vector> means, std::vector<Vector> variances,
                                 std::vector<double> priors)
    : means_(std::move(means)), variances_(std::move(variances)), priors_(std::move(priors)) {
  if (means_.size() < 2 || variances_.size() != means_.size() || priors_.size() != means_.size())
    throw Error(Errc::dimension_mismatch, "naive Bayes: inconsistent class parameters");
  for (std::size_t k = 0; k < means_.size(); ++k)
    if (means_[k].size() != means_[0].size() || variances_[k].size() != means_[0].size())
      throw Error(Errc::dimension_mismatch, "naive Bayes: inconsistent feature counts");
  check_priors(priors_);
  for (auto& v : variances_) v = v.cwiseMax(kVarianceFloor);
}

Vector NaiveBayesModel::scores(const Eigen::Ref<const Vector>& x) const {
  if (x.size() != num_features()) throw Error(Errc::dimension_mismatch, "sample length does not match model");
  Vector h(num_classes());
  for (int k = 0; k < num_classes(); ++k) {
    const auto& mu = means_[k];
    const auto& var = variances_[k];
    const double quad = ((x - mu).array().square() / var.array()).sum();
    const double logdet = var.array().log().sum();
    h(k) = std::log(priors_[k]) - 0.5 * (quad + logdet);
  }
  return h;
}

int NaiveBayesModel::predict(const Eigen::Ref<const Vector>& x) const { return argmax_label(scores(x)); }

NaiveBayesModel naive_bayes_fit(const Dataset& d) {
  const ClassSummaries cs = summarize(d);
  const int K = d.num_classes();
  std::vector<Vector> var(K, Vector::Zero(d.num_features()));
  for (Eigen::Index i = 0; i < d.num_samples(); ++i) {
    const int k = d.labels()[static_cast<std::size_t>(i)] - 1;
    var[k].array() += (d.features().row(i).transpose() - cs.means[k]).array().square();
  }
  for (int k = 0; k < K; ++k) var[k] /= static_cast<double>(cs.counts[k]);
  return NaiveBayesModel(cs.means, std::move(var), cs.priors);
}

int naive_bayes_predict(const NaiveBayesModel& m, const Eigen::Ref<const Vector>& x) { return m.predict(x); }

PredictionReport evaluate(const NaiveBayesModel& m, const Matrix& features, const std::vector<int>* truth) {
  return evaluate_rows(m, features, truth);
}

Matrix symmetric_pinv(const Matrix& S, double rel_tol) {
  if (S.rows() != S.cols()) throw Error(Errc::dimension_mismatch, "pseudo-inverse needs a square matrix");
  if (S.size() == 0) return S;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(S);
  const Vector& ev = eig.eigenvalues();
  const double cutoff = rel_tol * ev.cwiseAbs().maxCoeff();
  Vector inv = Vector::Zero(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) > cutoff && ev(i) != 0.0) inv(i) = 1.0 / ev(i);
  const Matrix& U = eig.eigenvectors();
  return U * inv.asDiagonal() * U.transpose();
}

DirectionSet pseudoinverse_lda_fit(const Matrix& S, const ClassSummaries& cs) {
  if (S.rows() != cs.num_features()) throw Error(Errc::dimension_mismatch, "scatter does not match class means");
  return DirectionSet(symmetric_pinv(S) * cs.delta_matrix());
}

}  // namespace slda
