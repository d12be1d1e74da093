#include "sparselda/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sparselda/error.hpp"

namespace slda::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_real(const std::string& tok, std::size_t line) {
  const std::string t = trim(tok);
  if (t.empty()) throw Error(Errc::parse, "line " + std::to_string(line) + ": missing value");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
    throw Error(Errc::parse, "line " + std::to_string(line) + ": bad number '" + t + "'");
  return v;
}

int parse_int(const std::string& tok, std::size_t line) {
  const std::string t = trim(tok);
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
    throw Error(Errc::parse, "line " + std::to_string(line) + ": bad integer '" + t + "'");
  return static_cast<int>(v);
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::parse, "cannot write '" + tmp + "'");
    out << content;
    out.flush();
    if (!out) throw Error(Errc::parse, "write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(Errc::parse, "cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

CsvTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) {
      header = split(trim(line), ',');
      break;
    }
  }
  if (header.empty()) throw Error(Errc::parse, "empty dataset file");
  const bool labeled = trim(header[0]) == "label";
  const std::size_t width = header.size();
  const std::size_t p = labeled ? width - 1 : width;
  if (p == 0) throw Error(Errc::parse, "dataset has no feature columns");

  std::vector<double> values;
  std::vector<int> labels;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != width)
      throw Error(Errc::parse, "line " + std::to_string(lineno) + ": expected " + std::to_string(width) + " fields");
    std::size_t c = 0;
    if (labeled) labels.push_back(parse_int(cells[c++], lineno));
    for (; c < width; ++c) values.push_back(parse_real(cells[c], lineno));
    ++rows;
  }
  if (rows == 0) throw Error(Errc::parse, "dataset file has no samples");

  CsvTable t;
  t.features.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < p; ++j)
      t.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i * p + j];
  if (labeled) t.labels = std::move(labels);
  return t;
}

CsvTable read_csv(const std::string& path) { return parse_csv(read_file(path)); }

Dataset read_dataset(const std::string& path) {
  CsvTable t = read_csv(path);
  if (!t.labels) throw Error(Errc::parse, "'" + path + "' has no label column");
  try {
    return Dataset::from_labels(std::move(t.features), std::move(*t.labels));
  } catch (const Error& e) {
    throw Error(Errc::parse, "'" + path + "': " + e.what());
  }
}

std::string format_dataset(const Dataset& d) {
  std::string out = "label";
  for (Eigen::Index j = 0; j < d.num_features(); ++j) out += ",f" + std::to_string(j + 1);
  out += '\n';
  for (Eigen::Index i = 0; i < d.num_samples(); ++i) {
    out += std::to_string(d.labels()[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < d.num_features(); ++j) {
      out += ',';
      out += format_real(d.features()(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_dataset(const std::string& path, const Dataset& d) { write_file_atomic(path, format_dataset(d)); }

namespace {

void put_row(std::string& out, const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  for (Eigen::Index j = 0; j < row.size(); ++j) {
    if (j > 0) out += ' ';
    out += format_real(row(j));
  }
  out += '\n';
}

class LineReader {
 public:
  explicit LineReader(const std::string& text) : in_(text) {}

  // Next non-blank, non-comment line split on whitespace.
  std::vector<std::string> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      const std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      std::istringstream ss(t);
      std::vector<std::string> toks;
      std::string tok;
      while (ss >> tok) toks.push_back(tok);
      return toks;
    }
    throw Error(Errc::parse, "model file ends early");
  }

  std::vector<double> reals(std::size_t expect) {
    const auto toks = next();
    if (toks.size() != expect)
      throw Error(Errc::parse, "model line " + std::to_string(lineno_) + ": expected " + std::to_string(expect) + " values");
    std::vector<double> v;
    for (const auto& t : toks) v.push_back(parse_real(t, lineno_));
    return v;
  }

  std::size_t lineno() const { return lineno_; }

 private:
  std::istringstream in_;
  std::size_t lineno_ = 0;
};

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

std::string format_model(const ModelFile& m) {
  const int K = static_cast<int>(m.priors.size());
  const Eigen::Index p = m.num_features();
  std::string out = "# sparselda model v1\n";
  out += "kind " + m.kind + '\n';
  out += "estimator " + (m.estimator.empty() ? std::string("none") : m.estimator) + '\n';
  out += "lambda " + (m.lambda ? format_real(*m.lambda) : std::string("none")) + '\n';
  out += "zeta " + format_real(m.zeta) + '\n';
  out += "features " + std::to_string(p) + '\n';
  out += "classes " + std::to_string(K) + '\n';
  out += "priors\n";
  put_row(out, Eigen::Map<const Eigen::RowVectorXd>(m.priors.data(), K));
  out += "means\n";
  for (const auto& mu : m.means) put_row(out, mu.transpose());
  if (m.kind == "lda") {
    out += "directions\n";
    for (Eigen::Index j = 0; j < m.directions.rows(); ++j) put_row(out, m.directions.row(j));
  } else {
    out += "variances\n";
    for (const auto& v : m.variances) put_row(out, v.transpose());
  }
  if (m.scatter) {
    out += "scatter " + format_real(m.scatter->sigma_plus_min) + ' ' + format_real(m.scatter->sigma_plus_max) + ' ' +
           format_real(m.scatter->sigma_minus_max) + '\n';
  }
  out += "end\n";
  return out;
}

ModelFile parse_model(const std::string& text) {
  LineReader rd(text);
  ModelFile m;
  auto keyed = [&](const char* key) {
    auto toks = rd.next();
    if (toks.size() != 2 || toks[0] != key)
      throw Error(Errc::parse, "model line " + std::to_string(rd.lineno()) + ": expected '" + key + " <value>'");
    return toks[1];
  };
  m.kind = keyed("kind");
  if (m.kind != "lda" && m.kind != "nbayes") throw Error(Errc::parse, "unknown model kind '" + m.kind + "'");
  m.estimator = keyed("estimator");
  if (const auto lam = keyed("lambda"); lam != "none") m.lambda = parse_real(lam, rd.lineno());
  m.zeta = parse_real(keyed("zeta"), rd.lineno());
  const int p = parse_int(keyed("features"), rd.lineno());
  const int K = parse_int(keyed("classes"), rd.lineno());
  if (p < 1 || K < 2) throw Error(Errc::parse, "model dimensions out of range");
  const auto up = static_cast<std::size_t>(p);
  const auto uk = static_cast<std::size_t>(K);

  auto section = [&](const char* name) {
    const auto toks = rd.next();
    if (toks.size() != 1 || toks[0] != name)
      throw Error(Errc::parse, "model line " + std::to_string(rd.lineno()) + ": expected section '" + name + "'");
  };
  section("priors");
  m.priors = rd.reals(uk);
  section("means");
  for (int k = 0; k < K; ++k) m.means.push_back(to_vector(rd.reals(up)));
  if (m.kind == "lda") {
    section("directions");
    m.directions.resize(p, K - 1);
    for (int j = 0; j < p; ++j) {
      const auto row = rd.reals(uk - 1);
      for (int k = 0; k < K - 1; ++k) m.directions(j, k) = row[static_cast<std::size_t>(k)];
    }
  } else {
    section("variances");
    for (int k = 0; k < K; ++k) m.variances.push_back(to_vector(rd.reals(up)));
  }
  auto toks = rd.next();
  if (toks.size() == 4 && toks[0] == "scatter") {
    m.scatter = CovarianceSummary{parse_real(toks[1], rd.lineno()), parse_real(toks[2], rd.lineno()),
                                  parse_real(toks[3], rd.lineno())};
    toks = rd.next();
  }
  if (toks.size() != 1 || toks[0] != "end") throw Error(Errc::parse, "model file: expected 'end'");
  return m;
}

ModelFile read_model(const std::string& path) { return parse_model(read_file(path)); }

void write_model(const std::string& path, const ModelFile& m) { write_file_atomic(path, format_model(m)); }

TruthFile truth_from_spec(const SimulationSpec& spec, const std::string& design) {
  TruthFile t;
  t.design = design;
  t.seed = spec.seed;
  t.directions = spec.true_directions;
  t.sigma = covariance_summary(spec.sigma);
  for (int k = 1; k < spec.num_classes(); ++k)
    t.delta.push_back(delta_quadratic(spec.sigma, spec.mus[0] - spec.mus[static_cast<std::size_t>(k)]));
  t.class_sizes = spec.class_sizes;
  return t;
}

std::string format_truth(const TruthFile& t) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["design"] = t.design;
  j["seed"] = t.seed;
  j["features"] = t.directions.rows();
  j["classes"] = t.directions.cols() + 1;
  j["class_sizes"] = t.class_sizes;
  ordered_json dirs = ordered_json::array();
  ordered_json supports = ordered_json::array();
  const DirectionSet ds(t.directions);
  for (Eigen::Index k = 0; k < t.directions.cols(); ++k) {
    dirs.push_back(std::vector<double>(t.directions.col(k).data(), t.directions.col(k).data() + t.directions.rows()));
    std::vector<Eigen::Index> s = ds.column_support(k);
    for (auto& v : s) ++v;
    supports.push_back(s);
  }
  std::vector<Eigen::Index> joint = ds.row_support();
  for (auto& v : joint) ++v;
  j["directions"] = dirs;
  j["supports"] = supports;
  j["joint_support"] = joint;
  j["sigma_summary"] = {{"sigma_plus_min", t.sigma.sigma_plus_min},
                        {"sigma_plus_max", t.sigma.sigma_plus_max},
                        {"sigma_minus_max", t.sigma.sigma_minus_max}};
  j["delta"] = t.delta;
  double total = 0.0;
  for (double v : t.delta) total += v;
  j["delta_total"] = total;
  return j.dump(2) + '\n';
}

TruthFile parse_truth(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    TruthFile t;
    t.design = j.at("design").get<std::string>();
    t.seed = j.at("seed").get<std::uint64_t>();
    const auto& dirs = j.at("directions");
    const auto p = j.at("features").get<Eigen::Index>();
    t.directions.resize(p, static_cast<Eigen::Index>(dirs.size()));
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      const auto col = dirs[k].get<std::vector<double>>();
      if (static_cast<Eigen::Index>(col.size()) != p) throw Error(Errc::parse, "truth: direction length mismatch");
      for (Eigen::Index i = 0; i < p; ++i) t.directions(i, static_cast<Eigen::Index>(k)) = col[static_cast<std::size_t>(i)];
    }
    const auto& s = j.at("sigma_summary");
    t.sigma = {s.at("sigma_plus_min").get<double>(), s.at("sigma_plus_max").get<double>(),
               s.at("sigma_minus_max").get<double>()};
    t.delta = j.at("delta").get<std::vector<double>>();
    t.class_sizes = j.at("class_sizes").get<std::vector<int>>();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("truth file: ") + e.what());
  }
}

TruthFile read_truth(const std::string& path) { return parse_truth(read_file(path)); }

}  // namespace slda::io
