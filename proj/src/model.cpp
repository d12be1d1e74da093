#include "sparselda/model.hpp"

#include <algorithm>
#include <string>

#include "sparselda/error.hpp"

namespace slda {

Dataset::Dataset(Matrix features, std::vector<int> labels, int num_classes)
    : features_(std::move(features)), labels_(std::move(labels)), num_classes_(num_classes) {
  if (num_classes_ < 2) throw Error(Errc::invalid_argument, "need at least two classes");
  if (features_.cols() < 1) throw Error(Errc::invalid_argument, "dataset has no features");
  if (static_cast<Eigen::Index>(labels_.size()) != features_.rows())
    throw Error(Errc::dimension_mismatch, "label count does not match sample count");
  std::vector<int> counts(num_classes_, 0);
  for (int y : labels_) {
    if (y < 1 || y > num_classes_)
      throw Error(Errc::invalid_argument, "label " + std::to_string(y) + " outside 1.." +
                                              std::to_string(num_classes_));
    ++counts[y - 1];
  }
  for (int k = 0; k < num_classes_; ++k)
    if (counts[k] == 0)
      throw Error(Errc::insufficient_data, "class " + std::to_string(k + 1) + " has no samples");
}

Dataset Dataset::from_labels(Matrix features, std::vector<int> labels) {
  const int k = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
  return Dataset(std::move(features), std::move(labels), k);
}

int Dataset::class_count(int k) const {
  return static_cast<int>(std::count(labels_.begin(), labels_.end(), k));
}

Dataset Dataset::subset(std::span<const Eigen::Index> rows) const {
  Matrix x(static_cast<Eigen::Index>(rows.size()), features_.cols());
  std::vector<int> y;
  y.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) = features_.row(rows[i]);
    y.push_back(labels_[static_cast<std::size_t>(rows[i])]);
  }
  return Dataset(std::move(x), std::move(y), num_classes_);
}

Matrix ClassSummaries::delta_matrix() const {
  const auto m = static_cast<Eigen::Index>(deltas.size());
  Matrix d(num_features(), m);
  for (Eigen::Index k = 0; k < m; ++k) d.col(k) = deltas[static_cast<std::size_t>(k)];
  return d;
}

std::vector<Eigen::Index> DirectionSet::row_support() const {
  std::vector<Eigen::Index> out;
  for (Eigen::Index j = 0; j < coef_.rows(); ++j)
    if ((coef_.row(j).array() != 0.0).any()) out.push_back(j);
  return out;
}

std::vector<Eigen::Index> DirectionSet::column_support(Eigen::Index k) const {
  std::vector<Eigen::Index> out;
  for (Eigen::Index j = 0; j < coef_.rows(); ++j)
    if (coef_(j, k) != 0.0) out.push_back(j);
  return out;
}

namespace {

// Rows grouped by class, lexicographically sorted on feature values within a
// class. Reductions run in this order so that sample permutations give
// bit-identical statistics.
std::vector<std::vector<Eigen::Index>> canonical_members(const Dataset& d) {
  const auto& x = d.features();
  const Eigen::Index p = d.num_features();
  std::vector<std::vector<Eigen::Index>> members(d.num_classes());
  for (Eigen::Index i = 0; i < d.num_samples(); ++i)
    members[d.labels()[static_cast<std::size_t>(i)] - 1].push_back(i);
  for (auto& rows : members) {
    std::sort(rows.begin(), rows.end(), [&](Eigen::Index a, Eigen::Index b) {
      for (Eigen::Index j = 0; j < p; ++j)
        if (x(a, j) != x(b, j)) return x(a, j) < x(b, j);
      return false;
    });
  }
  return members;
}

}  // namespace

ClassSummaries summarize(const Dataset& d) {
  const int K = d.num_classes();
  const Eigen::Index p = d.num_features();
  const auto members = canonical_members(d);

  ClassSummaries cs;
  cs.counts.resize(K);
  cs.means.resize(K);
  for (int k = 0; k < K; ++k) {
    if (members[k].empty())
      throw Error(Errc::insufficient_data, "class " + std::to_string(k + 1) + " has no samples");
    Vector sum = Vector::Zero(p);
    for (Eigen::Index i : members[k]) sum += d.features().row(i).transpose();
    cs.counts[k] = static_cast<int>(members[k].size());
    cs.means[k] = sum / static_cast<double>(cs.counts[k]);
  }

  const double n = static_cast<double>(d.num_samples());
  cs.priors.resize(K);
  for (int k = 0; k < K; ++k) cs.priors[k] = cs.counts[k] / n;
  cs.deltas.reserve(K - 1);
  for (int k = 1; k < K; ++k) cs.deltas.push_back(cs.means[0] - cs.means[k]);
  return cs;
}

PooledScatter pooled_scatter(const Dataset& d, const ClassSummaries& cs) {
  const Eigen::Index n = d.num_samples();
  const Eigen::Index dof = n - d.num_classes();
  if (dof < 1) throw Error(Errc::insufficient_data, "insufficient degrees of freedom");
  if (cs.num_features() != d.num_features() || cs.num_classes() != d.num_classes())
    throw Error(Errc::dimension_mismatch, "class summaries do not match dataset");

  const Eigen::Index p = d.num_features();
  Matrix centered(n, p);
  Eigen::Index r = 0;
  const auto members = canonical_members(d);
  for (int k = 0; k < d.num_classes(); ++k)
    for (Eigen::Index i : members[k]) centered.row(r++) = d.features().row(i) - cs.means[k].transpose();

  Matrix s = Matrix::Zero(p, p);
  s.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose(), 1.0 / static_cast<double>(dof));
  s.triangularView<Eigen::StrictlyUpper>() = s.transpose();
  return PooledScatter{std::move(s), dof};
}

Vector group_norms(const DirectionSet& ds) {
  return ds.matrix().rowwise().norm();
}

}  // namespace slda
