#pragma once

// File formats.
//
// Dataset CSV: header `label,f1,...,fp` followed by one sample per row; the
// label column holds integers 1..K. A file whose header does not start with
// `label` is read as unlabeled features. Reals are written with 17
// significant digits so reading back reproduces every double exactly.
//
// Model file: line-oriented sections, see format_model().
// Truth sidecar: a JSON object, see TruthFile.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparselda/model.hpp"
#include "sparselda/simulate.hpp"

namespace slda::io {

std::string format_real(double v);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

struct CsvTable {
  Matrix features;
  std::optional<std::vector<int>> labels;
};

/// Throws Error(Errc::parse) on malformed content or a file with no rows.
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

/// Requires the label column.
Dataset read_dataset(const std::string& path);
std::string format_dataset(const Dataset& d);
void write_dataset(const std::string& path, const Dataset& d);

struct ModelFile {
  std::string kind = "lda";  // "lda" or "nbayes"
  std::string estimator;
  std::optional<double> lambda;
  double zeta = 0.0;
  std::vector<double> priors;
  std::vector<Vector> means;
  Matrix directions;               // lda: p x K'
  std::vector<Vector> variances;   // nbayes
  std::optional<CovarianceSummary> scatter;

  Eigen::Index num_features() const noexcept { return means.empty() ? 0 : means.front().size(); }
};

/// # sparselda model v1
/// kind <lda|nbayes>
/// estimator <name>
/// lambda <value|none>
/// zeta <value>
/// features <p>
/// classes <K>
/// priors            then one line with K values
/// means             then K lines with p values
/// directions        then p lines with K-1 values    (lda)
/// variances         then K lines with p values      (nbayes)
/// scatter <S+min> <S+max> <S-max>                   (optional)
/// end
std::string format_model(const ModelFile& m);
ModelFile parse_model(const std::string& text);
ModelFile read_model(const std::string& path);
void write_model(const std::string& path, const ModelFile& m);

struct TruthFile {
  std::string design;
  std::uint64_t seed = 0;
  Matrix directions;  // p x K'
  CovarianceSummary sigma;
  std::vector<double> delta;  // <Sigma^{-1} delta_k, delta_k> per direction
  std::vector<int> class_sizes;
};

TruthFile truth_from_spec(const SimulationSpec& spec, const std::string& design);
std::string format_truth(const TruthFile& t);
TruthFile parse_truth(const std::string& text);
TruthFile read_truth(const std::string& path);

}  // namespace slda::io
