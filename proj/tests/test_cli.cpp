#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "sparselda/cli.hpp"
#include "sparselda/io.hpp"

using namespace slda;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string dir() {
  static const fs::path d = [] {
    const fs::path p = fs::temp_directory_path() / "sparselda_test_cli";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return d.string();
}

std::string at(const std::string& name) { return dir() + "/" + name; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  for (std::string l; std::getline(ss, l);) out.push_back(l);
  return out;
}

std::string sim1_data(int seed) {
  const std::string p = at("sim1_" + std::to_string(seed) + ".csv");
  if (!fs::exists(p)) REQUIRE(run({"simulate", "--design", "sim1", "--seed", std::to_string(seed), "--out", p}).code == 0);
  return p;
}

}  // namespace

TEST_CASE("simulate writes data and truth") {
  const std::string p = sim1_data(7);
  const auto rows = lines(io::read_file(p));
  CHECK(rows.size() == 61);
  const auto t = io::read_truth(p + ".truth.json");
  CHECK(DirectionSet(t.directions).row_support() == std::vector<Eigen::Index>{0, 1, 2});

  REQUIRE(run({"simulate", "--design", "sim2", "--seed", "3", "--out", at("s2.csv"), "--truth", at("s2.json")}).code == 0);
  const auto j = nlohmann::json::parse(io::read_file(at("s2.json")));
  CHECK(j["joint_support"] == nlohmann::json::array({1, 2, 3, 4}));
  CHECK(run({"simulate", "--design", "sim3", "--out", at("x.csv")}).code == 2);
}

TEST_CASE("fit with theory lambda and large lambda") {
  const std::string data = sim1_data(7);
  auto r = run({"fit", "--data", data, "--lambda", "theory", "--zeta", "0.25", "--out", at("m.txt")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("converged=true") != std::string::npos);
  const auto m = io::read_model(at("m.txt"));
  CHECK(m.lambda);
  CHECK(DirectionSet(m.directions).row_support().size() <= 200);

  r = run({"fit", "--data", data, "--lambda", "1000", "--out", at("zero.txt")});
  REQUIRE(r.code == 0);
  CHECK(io::read_model(at("zero.txt")).directions == Matrix::Zero(200, 2));

  CHECK(run({"fit", "--data", at("missing.csv"), "--lambda", "1", "--out", at("q.txt")}).code == 2);
  CHECK(run({"fit", "--data", data, "--out", at("q.txt")}).code == 2);
  CHECK(run({"fit", "--data", data, "--lambda", "-1", "--out", at("q.txt")}).code == 2);
  CHECK(run({"fit", "--data", data, "--estimator", "ridge", "--lambda", "1", "--out", at("q.txt")}).code == 2);
  CHECK(run({"fit", "--data", data, "--lambda", "0.01", "--max-iter", "3", "--strict", "--out", at("q.txt")}).code == 3);
  CHECK(run({"fit", "--data", data, "--lambda", "0.01", "--max-iter", "3", "--out", at("q.txt")}).code == 0);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("fit with every estimator then predict on training data") {
  const std::string data = sim1_data(7);
  for (std::string e : {"grouped", "single", "lpd", "nbayes", "pinv"}) {
    std::vector<std::string> args = {"fit", "--data", data, "--estimator", e, "--out", at(e + ".txt")};
    if (e != "nbayes" && e != "pinv") {
      // LPD needs lambda >= min_b |S b - d|_inf (about 0.73 on this draw)
      args.push_back("--lambda");
      args.push_back(e == "lpd" ? "1" : "0.3");
    }
    REQUIRE_MESSAGE(run(args).code == 0, e);
    const auto r = run({"predict", "--model", at(e + ".txt"), "--data", data, "--out", at(e + ".pred")});
    REQUIRE(r.code == 0);
    const auto pos = r.out.find("error_rate=");
    REQUIRE(pos != std::string::npos);
    const double err = std::stod(r.out.substr(pos + 11));
    CHECK(err >= 0.0);
    CHECK(err <= 1.0);
    CHECK(lines(io::read_file(at(e + ".pred"))).size() == 61);
  }
}

TEST_CASE("infeasible lpd exits 4") {
  // feature 2 is constant within classes, so its scatter row is zero while
  // its mean difference is 1
  io::write_file_atomic(at("flat.csv"), "label,f1,f2\n1,0,0\n1,1,0\n1,2,0\n2,1,1\n2,3,1\n2,4,1\n");
  CHECK(run({"fit", "--data", at("flat.csv"), "--estimator", "lpd", "--lambda", "0.5", "--out", at("f.txt")}).code == 4);
  CHECK(run({"fit", "--data", at("flat.csv"), "--estimator", "lpd", "--lambda", "5", "--out", at("f.txt")}).code == 0);
}

TEST_CASE("predict with a hand-written model") {
  io::ModelFile m;
  m.estimator = "grouped";
  m.lambda = 0.1;
  m.priors = {0.5, 0.5};
  m.means = {Vector::Zero(1), Vector::Constant(1, 2.0)};
  m.directions = Matrix::Constant(1, 1, -2.0);
  io::write_model(at("hand.txt"), m);
  io::write_file_atomic(at("hand.csv"), "f1\n0\n0.9\n1\n2\n");
  auto r = run({"predict", "--model", at("hand.txt"), "--data", at("hand.csv"), "--out", at("hand.pred")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("error_rate") == std::string::npos);
  CHECK(io::read_file(at("hand.pred")) == "prediction\n1\n1\n2\n2\n");

  io::write_file_atomic(at("hand_l.csv"), "label,f1\n1,0\n2,0.9\n");
  r = run({"predict", "--model", at("hand.txt"), "--data", at("hand_l.csv"), "--out", at("hand.pred")});
  CHECK(r.out.find("error_rate=0.5") != std::string::npos);

  io::write_file_atomic(at("empty.csv"), "");
  CHECK(run({"predict", "--model", at("hand.txt"), "--data", at("empty.csv"), "--out", at("e.pred")}).code == 2);
  io::write_file_atomic(at("wide.csv"), "f1,f2\n0,1\n");
  CHECK(run({"predict", "--model", at("hand.txt"), "--data", at("wide.csv"), "--out", at("e.pred")}).code == 6);
}

TEST_CASE("cv table, tie-break and fold errors") {
  const std::string data = sim1_data(7);
  auto r = run({"cv", "--data", data, "--lambda-grid", "auto:6:1.5", "--folds", "5", "--seed", "3", "--out", at("cv1.csv")});
  REQUIRE(r.code == 0);
  const auto rows = lines(io::read_file(at("cv1.csv")));
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == "lambda,mean_error,sd_error,chosen");
  REQUIRE(run({"cv", "--data", data, "--lambda-grid", "auto:6:1.5", "--folds", "5", "--seed", "3", "--out", at("cv2.csv")}).code == 0);
  CHECK(io::read_file(at("cv1.csv")) == io::read_file(at("cv2.csv")));

  // Two penalties above lambda_max give identical all-zero fits and errors.
  r = run({"cv", "--data", data, "--lambda-grid", "2000:2:1", "--folds", "3", "--out", at("cv3.csv")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("chosen_lambda=2000 ") != std::string::npos);

  const std::string small = at("small.csv");
  REQUIRE(run({"simulate", "--design", "sim1", "--seed", "1", "--per-class", "5", "--out", small}).code == 0);
  CHECK(run({"cv", "--data", small, "--folds", "6", "--out", at("cv4.csv")}).code == 5);
  CHECK(run({"cv", "--data", small, "--lambda-grid", "1:2", "--out", at("cv4.csv")}).code == 2);
}

TEST_CASE("path output shape") {
  const std::string data = sim1_data(7);
  REQUIRE(run({"path", "--data", data, "--lambda-grid", "auto:5:1", "--out", at("path.csv")}).code == 0);
  const auto rows = lines(io::read_file(at("path.csv")));
  REQUIRE(rows.size() == 1 + 5 * 2 * 200);
  CHECK(rows[0] == "lambda,direction,feature,coefficient,group_norm");
  for (std::size_t i = 1; i <= 400; ++i) {
    const auto comma = rows[i].rfind(',');
    CHECK(std::stod(rows[i].substr(comma + 1)) == 0.0);
  }
}

TEST_CASE("diagnose") {
  const std::string data = sim1_data(7);
  const auto t = io::read_truth(data + ".truth.json");
  io::ModelFile m;
  m.estimator = "grouped";
  m.priors = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  m.means.assign(3, Vector::Zero(200));
  m.directions = t.directions;
  io::write_model(at("truth_model.txt"), m);
  REQUIRE(run({"diagnose", "--model", at("truth_model.txt"), "--truth", data + ".truth.json", "--out", at("d1.jsonl")}).code == 0);
  auto recs = lines(io::read_file(at("d1.jsonl")));
  REQUIRE(recs.size() == 4);
  auto s = nlohmann::json::parse(recs[0]);
  CHECK(s["cone_condition"] == true);
  CHECK(s["event_d"].is_null());
  CHECK(s["sup_group_error"] == 0.0);
  CHECK(nlohmann::json::parse(recs[1])["linf_error"] == 0.0);
  CHECK(nlohmann::json::parse(recs[3])["exact_recovery"] == true);

  REQUIRE(run({"fit", "--data", data, "--lambda", "1000", "--out", at("zero.txt")}).code == 0);
  REQUIRE(run({"diagnose", "--model", at("zero.txt"), "--truth", data + ".truth.json", "--out", at("d2.jsonl")}).code == 0);
  recs = lines(io::read_file(at("d2.jsonl")));
  CHECK(nlohmann::json::parse(recs[3])["false_negatives"] == 3);
  CHECK(nlohmann::json::parse(recs[0])["event_d"].is_boolean());

  REQUIRE(run({"fit", "--data", data, "--lambda", "theory", "--out", at("th.txt")}).code == 0);
  REQUIRE(run({"diagnose", "--model", at("th.txt"), "--truth", data + ".truth.json", "--zeta", "0.25", "--out", at("d3.jsonl")}).code == 0);
  const double sup = nlohmann::json::parse(lines(io::read_file(at("d3.jsonl")))[0])["sup_group_error"];
  CHECK(std::isfinite(sup));
  CHECK(sup > 0.0);

  CHECK(run({"diagnose", "--model", at("th.txt"), "--out", at("d4.jsonl")}).code == 2);
  CHECK(run({"diagnose", "--model", at("th.txt"), "--truth", at("nothere.json"), "--out", at("d4.jsonl")}).code == 2);
}

TEST_CASE("sparse path excludes a noise feature at the cross-validated penalty") {
  const std::string data = sim1_data(7);
  auto r = run({"cv", "--data", data, "--lambda-grid", "auto:20:2", "--out", at("cv_path.csv")});
  REQUIRE(r.code == 0);
  const auto pos = r.out.find("chosen_lambda=");
  const std::string lam = r.out.substr(pos + 14, r.out.find(' ', pos) - pos - 14);
  REQUIRE(run({"fit", "--data", data, "--lambda", lam, "--out", at("cvfit.txt")}).code == 0);
  const auto m = io::read_model(at("cvfit.txt"));
  MESSAGE("cv lambda " << lam << ", feature 12 group norm " << m.directions.row(11).norm());
  CHECK(m.directions.row(11).norm() == 0.0);
}

TEST_CASE("installed binary runs") {
  const std::string cmd = std::string(SLDA_CLI_PATH) + " simulate --design sim2 --seed 2 --out " + at("bin.csv") +
                          " > " + at("bin.log") + " 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(at("bin.csv.truth.json")));
  const std::string bad = std::string(SLDA_CLI_PATH) + " fit --data " + at("none.csv") + " --lambda 1 --out " +
                          at("none.txt") + " > " + at("bin2.log") + " 2>&1";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
