// Copyright 2026 The schatten authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "schatten/cli.hpp"
#include "schatten/io.hpp"
#include "schatten/schatten.hpp"

using namespace schatten;
namespace fs = std::filesystem;

namespace {

// Captures std::cout and std::cerr for in-process CLI runs.
class CaptureStreams {
 public:
  CaptureStreams()
      : old_out_(std::cout.rdbuf(out_.rdbuf())),
        old_err_(std::cerr.rdbuf(err_.rdbuf())) {}
  ~CaptureStreams() {
    std::cout.rdbuf(old_out_);
    std::cerr.rdbuf(old_err_);
  }
  std::string out() const { return out_.str(); }
  std::string err() const { return err_.str(); }

 private:
  std::ostringstream out_;
  std::ostringstream err_;
  std::streambuf* old_out_;
  std::streambuf* old_err_;
};

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("schatten-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int n = 0;
    return n;
  }
  std::string file(const char* name) const { return (path / name).string(); }
};

int run_cli(const std::vector<std::string>& args, std::string* out = nullptr,
            std::string* err = nullptr) {
  CaptureStreams capture;
  const int code = cli::run(args);
  if (out) *out = capture.out();
  if (err) *err = capture.err();
  return code;
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
  for (const double v :
       {0.1, 1.0 / 3.0, 0.1 + 0.2, 1e-300, 1e300, -0.0, 2.5, 12345.6789}) {
    CHECK(std::stod(io::format_double(v)) == v);
  }
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(0.1) == "0.1");
}

TEST_CASE("decay models round-trip through JSON") {
  const DecayModel models[] = {PowerLawDecay{0.7, 2.5},
                               ExponentialDecay{0.4, 1.25},
                               EmpiricalDecay{{0.5, 0.3, 0.2}}};
  for (const DecayModel& m : models) {
    const io::Json j = io::model_to_json(m);
    const DecayModel back = io::model_from_json(j);
    CHECK(io::model_to_json(back) == j);
  }
  CHECK(io::model_to_json(models[0])["kind"] == "powerlaw");
  CHECK(io::model_to_json(models[1])["kind"] == "exponential");
  CHECK(io::model_to_json(models[2])["kind"] == "empirical");

  CHECK_THROWS_AS(io::model_from_json(io::Json{{"kind", "nope"}}),
                  FileFormatError);
  CHECK_THROWS_AS(io::model_from_json(io::Json{{"kind", "powerlaw"}}),
                  FileFormatError);
}

TEST_CASE("matrices round-trip exactly through files") {
  TempDir dir;
  const Eigen::MatrixXcd m = ginibre_matrix(7, 31337);
  io::MatrixMetadata meta;
  meta.name = "test";
  meta.seed = 31337;
  meta.model = DecayModel(ExponentialDecay{0.5, 1.0});
  io::save_matrix(dir.file("m.json"), m, meta);

  const io::LoadedMatrix loaded = io::load_matrix(dir.file("m.json"));
  REQUIRE(loaded.matrix.rows() == 7);
  // Bit-exact round trip, not approximate.
  CHECK((loaded.matrix - m).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(loaded.metadata.name.has_value());
  CHECK(*loaded.metadata.name == "test");
  REQUIRE(loaded.metadata.seed.has_value());
  CHECK(*loaded.metadata.seed == 31337);
  REQUIRE(loaded.metadata.model.has_value());
  CHECK(std::get<ExponentialDecay>(*loaded.metadata.model).beta == 1.0);
}

TEST_CASE("load_matrix rejects malformed input") {
  TempDir dir;
  CHECK_THROWS_AS(io::load_matrix(dir.file("missing.json")), IoError);

  io::write_text(dir.file("garbage.json"), "not json at all");
  CHECK_THROWS_AS(io::load_matrix(dir.file("garbage.json")), FileFormatError);

  io::write_text(dir.file("badtag.json"),
                 R"({"format":"something-else/9","dim":1,"real":[[1]],"imag":[[0]]})");
  CHECK_THROWS_AS(io::load_matrix(dir.file("badtag.json")), FileFormatError);

  io::write_text(
      dir.file("ragged.json"),
      R"({"format":"schatten-matrix/1","dim":2,"real":[[1,2],[3]],"imag":[[0,0],[0,0]]})");
  CHECK_THROWS_AS(io::load_matrix(dir.file("ragged.json")), FileFormatError);

  io::write_text(
      dir.file("nonfinite.json"),
      R"({"format":"schatten-matrix/1","dim":1,"real":[["inf"]],"imag":[[0]]})");
  CHECK_THROWS_AS(io::load_matrix(dir.file("nonfinite.json")),
                  FileFormatError);
}

TEST_CASE("certificate and report JSON carry the full decomposition") {
  const Certificate cert = theorem1_bound(0.01, PExponent(2.0), 9, 0.05);
  const io::Json j = io::certificate_to_json(cert);
  CHECK(j["p"] == 2.0);
  CHECK(j["N"] == 9);
  CHECK(j["bound"] == doctest::Approx(0.19));
  CHECK(j["tail_source"].is_null());

  CampaignConfig config;
  config.trials = 5;
  config.dims = {2, 3};
  const VerificationReport r = verify_lemmas(config);
  const io::Json rj = io::report_to_json(r);
  CHECK(rj["campaign"] == "lemmas");
  CHECK(rj["trials"] == 5);
  CHECK(rj["checks"] == r.checks);
  CHECK(rj["violations"].is_array());
  CHECK(rj["config"]["dims"].size() == 2);
  CHECK(rj["config"]["seed"] == 0);
}

TEST_CASE("sweep CSV has the documented shape") {
  SweepTable table{"corollary2", {}};
  table.rows.push_back({0.1, 3.0, 0.5196, 0.2, 0.7196, std::nullopt, std::nullopt});
  table.rows.push_back({0.01, 5.0, 0.067, 0.02, 0.087, 0.04, 0.01});
  const std::string csv = io::sweep_to_csv(table);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "swept,N,truncation_term,tail_term,bound,true_error");
  std::getline(lines, line);
  CHECK(line == "0.1,3,0.5196,0.2,0.7196,");  // blank true_error column
  std::getline(lines, line);
  CHECK(line == "0.01,5,0.067,0.02,0.087,0.04");
}

TEST_CASE("cli: help and usage errors") {
  std::string out, err;
  CHECK(run_cli({"--help"}, &out, &err) == 0);
  CHECK(out.find("certify") != std::string::npos);

  CHECK(run_cli({}, &out, &err) == 2);
  CHECK(run_cli({"frobnicate"}, &out, &err) == 2);
  CHECK(run_cli({"certify"}, &out, &err) == 2);  // missing --p
  CHECK(err.find("error:") != std::string::npos);

  // p = 1 is outside the usable exponent range and is a usage error.
  CHECK(run_cli({"certify", "--p", "1", "--p-error", "0.1", "--model",
                 "exponential", "--C", "1", "--beta", "1"},
                &out, &err) == 2);
  CHECK(err.find("1 < p") != std::string::npos);
}

TEST_CASE("cli: generate then certify in exact mode") {
  TempDir dir;
  std::string out, err;
  CHECK(run_cli({"generate", "--type", "gibbs", "--dim", "8", "--beta", "1.0",
                 "--out", dir.file("a0.json")},
                &out, &err) == 0);
  CHECK(run_cli({"generate", "--type", "density", "--dim", "8", "--seed", "3",
                 "--out", dir.file("a.json")},
                &out, &err) == 0);

  CHECK(run_cli({"certify", "--p", "2", "--a0", dir.file("a0.json"), "--a",
                 dir.file("a.json"), "--out", dir.file("cert.json")},
                &out, &err) == 0);
  const io::Json cert = io::Json::parse(out);
  CHECK(cert["bound"].is_number());
  CHECK(cert["true_1_error"].is_number());
  CHECK(cert["true_1_error"].get<double>() <=
        cert["bound"].get<double>() + 1e-9);
  CHECK(cert["bound"].get<double>() ==
        doctest::Approx(cert["truncation_term"].get<double>() +
                        cert["tail_term"].get<double>()));
  // The --out copy matches what was printed.
  CHECK(io::read_text(dir.file("cert.json")) == out);
}

TEST_CASE("cli: certify in model mode") {
  std::string out, err;
  CHECK(run_cli({"certify", "--p", "2", "--p-error", "1e-4", "--model",
                 "exponential", "--C", "0.6321205588285577", "--beta", "1"},
                &out, &err) == 0);
  const io::Json cert = io::Json::parse(out);
  CHECK(cert["p_error"] == 1e-4);
  CHECK(cert["tail_source"]["kind"] == "exponential");
  CHECK(cert["bound"].get<double>() < 1e-2);

  // The printed numbers are exactly the library's optimal certificate under
  // the default rank cap of 4 * n_epsilon + 16.
  const DecayModel model = ExponentialDecay{0.6321205588285577, 1.0};
  const std::uint64_t n_max =
      static_cast<std::uint64_t>(4.0 * n_epsilon(model, 1e-4) + 16.0);
  const Certificate oracle =
      optimal_certificate(1e-4, PExponent(2.0), model, n_max);
  CHECK(cert["bound"].get<double>() == oracle.bound);
  CHECK(cert["N"].get<std::uint64_t>() == oracle.truncation_rank);

  // Missing model parameters are usage errors.
  CHECK(run_cli({"certify", "--p", "2", "--p-error", "1e-4", "--model",
                 "powerlaw", "--C", "1"},
                &out, &err) == 2);
  CHECK(run_cli({"certify", "--p", "2", "--p-error", "1e-4"}, &out, &err) ==
        2);
}

TEST_CASE("cli: missing and malformed files exit 3") {
  TempDir dir;
  std::string out, err;
  CHECK(run_cli({"certify", "--p", "2", "--a0", dir.file("nope.json"), "--a",
                 dir.file("nope.json")},
                &out, &err) == 3);

  io::write_text(dir.file("bad.json"), "{]");
  CHECK(run_cli({"certify", "--p", "2", "--a0", dir.file("bad.json"), "--a",
                 dir.file("bad.json")},
                &out, &err) == 3);
}

TEST_CASE("cli: verify writes a report and respects SCHATTEN_OUT_DIR") {
  TempDir dir;
  std::string out, err;
  CHECK(run_cli({"verify", "--campaign", "lemmas", "--trials", "5", "--dims",
                 "2,3", "--out", dir.file("report.json")},
                &out, &err) == 0);
  CHECK(out.find("lemmas:") != std::string::npos);
  const io::Json report =
      io::Json::parse(io::read_text(dir.file("report.json")));
  CHECK(report["campaign"] == "lemmas");
  CHECK(report["trials"] == 5);

  // Default file name lands in SCHATTEN_OUT_DIR when --out is omitted.
  TempDir env_dir;
  ::setenv("SCHATTEN_OUT_DIR", env_dir.path.c_str(), 1);
  CHECK(run_cli({"verify", "--campaign", "norms", "--trials", "3", "--dims",
                 "2"},
                &out, &err) == 0);
  ::unsetenv("SCHATTEN_OUT_DIR");
  CHECK(fs::exists(env_dir.path / "report.json"));

  // Bad campaign and bad grids are usage errors.
  CHECK(run_cli({"verify", "--campaign", "bogus", "--trials", "1"}, &out,
                &err) == 2);
  CHECK(run_cli({"verify", "--trials", "1", "--dims", "2,x"}, &out, &err) ==
        2);
  CHECK(run_cli({"verify", "--trials", "1", "--p-grid", "1.5,1"}, &out,
                &err) == 2);
}

TEST_CASE("cli: sweep writes CSV for both modes") {
  TempDir dir;
  std::string out, err;
  CHECK(run_cli({"sweep", "--sweep", "corollary1", "--p", "2", "--beta", "1",
                 "--dim", "8", "--magnitudes", "1e-2,1e-3", "--seed", "7",
                 "--out", dir.file("c1.csv")},
                &out, &err) == 0);
  const std::string c1 = io::read_text(dir.file("c1.csv"));
  CHECK(c1.rfind("swept,N,", 0) == 0);
  CHECK(std::count(c1.begin(), c1.end(), '\n') == 3);

  CHECK(run_cli({"sweep", "--sweep", "corollary2", "--p", "1.5", "--model",
                 "powerlaw", "--C", "1", "--alpha", "2", "--eps", "1e-1,1e-2",
                 "--out", dir.file("c2.csv")},
                &out, &err) == 0);
  const std::string c2 = io::read_text(dir.file("c2.csv"));
  // Model-only sweeps leave the true_error column empty.
  CHECK(c2.find(",\n") != std::string::npos);

  CHECK(run_cli({"sweep", "--sweep", "corollary1", "--p", "2", "--magnitudes",
                 "1e-2,1e-2", "--out", dir.file("x.csv")},
                &out, &err) == 2);
  CHECK(run_cli({"sweep", "--sweep", "nope", "--p", "2"}, &out, &err) == 2);
}

TEST_CASE("cli: certify accepts diagonal non-Hermitian reference operators") {
  TempDir dir;
  // A diagonal matrix with complex eigenvalues is normal; the CLI reads its
  // spectrum straight off the diagonal.
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = std::complex<double>(0.0, 0.6);
  d(1, 1) = std::complex<double>(-0.4, 0.0);
  io::save_matrix(dir.file("d.json"), d);
  io::save_matrix(dir.file("a.json"), d);

  std::string out, err;
  CHECK(run_cli({"certify", "--p", "2", "--a0", dir.file("d.json"), "--a",
                 dir.file("a.json")},
                &out, &err) == 0);
  const io::Json cert = io::Json::parse(out);
  CHECK(cert["true_1_error"].get<double>() <= 1e-12);

  // Non-normal input is rejected as a domain error.
  Eigen::MatrixXcd jordan = Eigen::MatrixXcd::Zero(2, 2);
  jordan(0, 0) = std::complex<double>(1.0);
  jordan(0, 1) = std::complex<double>(0.5);
  io::save_matrix(dir.file("j.json"), jordan);
  CHECK(run_cli({"certify", "--p", "2", "--a0", dir.file("j.json"), "--a",
                 dir.file("a.json")},
                &out, &err) == 2);
}
