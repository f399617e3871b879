// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pinfo/cli.hpp"

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = pinfo::dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path scratch_dir() {
  static const std::filesystem::path dir = [] {
    const auto d = std::filesystem::temp_directory_path() / "poisson-info-cli-tests";
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto p = scratch_dir() / name;
  std::ofstream f(p, std::ios::binary);
  f << text;
  return p.string();
}

nlohmann::json parse_line(const std::string& text) { return nlohmann::json::parse(text); }

const char* kScalarOne = R"({"dim": 1, "re": [[1.0]]})";
const char* kScalarFour = R"({"dim": 1, "re": [[4.0]]})";

}  // namespace

TEST_CASE("validate reports PSD matrices with their trace") {
  const std::string path = write_file("psd.json", R"({"dim": 2, "re": [[1.0, 0.0], [0.0, 2.0]]})");
  const RunResult r = run({"validate", "--matrix", path});
  CHECK(r.code == 0);
  const nlohmann::json j = parse_line(r.out);
  CHECK(j["psd"] == true);
  CHECK(j["dim"] == 2);
  CHECK(j["trace"].get<double>() == 3.0);
}

TEST_CASE("validate flags indefinite matrices without failing") {
  const std::string path = write_file("indef.json", R"({"dim": 2, "re": [[1.0, 2.0], [2.0, 1.0]]})");
  const RunResult r = run({"validate", "--matrix", path});
  CHECK(r.code == 0);
  const nlohmann::json j = parse_line(r.out);
  CHECK(j["psd"] == false);
  CHECK(std::abs(j["min_eigenvalue"].get<double>() + 1.0) <= 1e-10);
  CHECK(std::abs(j["lambda_max"].get<double>() - 3.0) <= 1e-10);
}

TEST_CASE("validate rejects non-Hermitian input as a domain error") {
  const std::string path = write_file("nonherm.json", R"({"dim": 2, "re": [[0.0, 1.0], [0.0, 0.0]]})");
  const RunResult r = run({"validate", "--matrix", path});
  CHECK(r.code == 1);
  CHECK(r.err.find("NotHermitian") != std::string::npos);
}

TEST_CASE("scalar fidelity is printed byte-exactly") {
  const std::string a = write_file("one.json", kScalarOne);
  const std::string b = write_file("four.json", kScalarFour);
  const RunResult r = run({"divergence", "--kind", "fidelity", "--a", a, "--b", b});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"kind\":\"fidelity\",\"value\":2.0000000000000000e+00}\n");
}

TEST_CASE("support violations emit the string inf and succeed") {
  const std::string a = write_file("full.json", R"({"dim": 2, "re": [[1.0, 0.0], [0.0, 1.0]]})");
  const std::string b = write_file("rank1.json", R"({"dim": 2, "re": [[1.0, 0.0], [0.0, 0.0]]})");
  const RunResult r = run({"divergence", "--kind", "kl", "--a", a, "--b", b});
  CHECK(r.code == 0);
  const nlohmann::json j = parse_line(r.out);
  CHECK(j["value"] == "inf");
}

TEST_CASE("optimized reports carry the maximizer location and are deterministic") {
  const std::string a = write_file("one.json", kScalarOne);
  const std::string b = write_file("four.json", kScalarFour);
  const RunResult r = run({"divergence", "--kind", "chernoff-distance", "--a", a, "--b", b});
  CHECK(r.code == 0);
  const nlohmann::json j = parse_line(r.out);
  CHECK(std::abs(j["value"].get<double>() - 0.506550749165636) <= 1e-9);
  CHECK(std::abs(j["s_star"].get<double>() - 0.443135563166973) <= 1e-6);

  const RunResult again = run({"divergence", "--kind", "chernoff-distance", "--a", a, "--b", b});
  CHECK(again.out == r.out);
}

TEST_CASE("classical vectors and explicit exponents are accepted") {
  const std::string a = write_file("vec1.json", "[1.0]");
  const std::string b = write_file("vec4.json", R"({"values": [4.0]})");
  {
    const RunResult r = run({"divergence", "--kind", "kl", "--classical", "--a", a, "--b", b});
    CHECK(r.code == 0);
    const double v = parse_line(r.out)["value"].get<double>();
    CHECK(std::abs(v - (3.0 - std::log(4.0))) <= 1e-12);
  }
  {
    const RunResult r = run({"divergence", "--kind", "chernoff", "--s", "0.25", "--classical",
                             "--a", a, "--b", b});
    CHECK(r.code == 0);
    const double v = parse_line(r.out)["value"].get<double>();
    CHECK(std::abs(v - std::pow(4.0, 0.75)) <= 1e-12);
  }
}

TEST_CASE("usage errors exit with code two") {
  CHECK(run({}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"divergence", "--kind", "fidelity"}).code == 2);  // missing --a/--b
  const std::string a = write_file("one.json", kScalarOne);
  const RunResult r = run({"divergence", "--kind", "banana", "--a", a, "--b", a});
  CHECK(r.code == 2);
  CHECK(r.err.find("usage error") != std::string::npos);
}

TEST_CASE("help succeeds and names the tool") {
  const RunResult r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("poisson-info") != std::string::npos);
}

TEST_CASE("missing and malformed files are domain errors") {
  CHECK(run({"validate", "--matrix", "/no/such/file.json"}).code == 1);
  const std::string broken = write_file("broken.json", "{not json");
  const RunResult r = run({"validate", "--matrix", broken});
  CHECK(r.code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("channel subcommand applies a loss map with exact factors") {
  const std::string spec = write_file("loss.json", R"({"kind": "loss", "eta": [0.25, 1.0]})");
  const std::string gamma = write_file("g22.json", R"({"dim": 2, "re": [[2.0, 0.0], [0.0, 2.0]]})");
  const RunResult r = run({"channel", "--spec", spec, "--gamma", gamma});
  CHECK(r.code == 0);
  const nlohmann::json j = parse_line(r.out);
  CHECK(j["dim"] == 2);
  CHECK(j["re"][0][0].get<double>() == 0.5);
  CHECK(j["re"][0][1].get<double>() == 0.0);
  CHECK(j["re"][1][1].get<double>() == 2.0);
  CHECK(!j.contains("im"));  // real output stays real on the wire
}

TEST_CASE("channel subcommand emits vectors for measurements") {
  const std::string spec = write_file(
      "povm.json",
      R"({"kind": "povm", "elements": [{"dim": 2, "re": [[1.0, 0.0], [0.0, 0.0]]},
                                        {"dim": 2, "re": [[0.0, 0.0], [0.0, 1.0]]}]})");
  const std::string gamma = write_file("g13.json", R"({"dim": 2, "re": [[1.0, 0.0], [0.0, 3.0]]})");
  const RunResult r = run({"channel", "--spec", spec, "--gamma", gamma});
  CHECK(r.code == 0);
  const nlohmann::json j = parse_line(r.out);
  REQUIRE(j["values"].size() == 2);
  CHECK(j["values"][0].get<double>() == 1.0);
  CHECK(j["values"][1].get<double>() == 3.0);
}

TEST_CASE("intensity files may declare N and tau1 separately") {
  const std::string gamma =
      write_file("ntau.json", R"({"N": 4.0, "tau1": {"dim": 1, "re": [[1.0]]}})");
  const std::string b = write_file("one.json", kScalarOne);
  const RunResult r = run({"divergence", "--kind", "fidelity", "--a", gamma, "--b", b});
  CHECK(r.code == 0);
  CHECK(parse_line(r.out)["value"].get<double>() == 2.0);
}

TEST_CASE("sampling is reproducible and honors the output file") {
  const RunResult r1 = run({"sample", "--lambda", "0.5,1.5", "--trials", "10", "--seed", "42"});
  CHECK(r1.code == 0);
  CHECK(r1.out.rfind("count_0,count_1\n", 0) == 0);
  CHECK(std::count(r1.out.begin(), r1.out.end(), '\n') == 11);
  const RunResult r2 = run({"sample", "--lambda", "0.5,1.5", "--trials", "10", "--seed", "42"});
  CHECK(r1.out == r2.out);

  const std::string out_path = (scratch_dir() / "counts.csv").string();
  const RunResult r3 = run({"sample", "--lambda", "0.5,1.5", "--trials", "10", "--seed", "42",
                            "--out", out_path});
  CHECK(r3.code == 0);
  CHECK(r3.out.empty());
  std::ifstream f(out_path, std::ios::binary);
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(buf.str() == r1.out);
}

TEST_CASE("convergence sweeps print a shrinking error column") {
  const RunResult r = run({"converge", "--kind", "fidelity", "--n", "1", "--nprime", "4",
                           "--m-list", "100,1000,10000"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "M,finite_value,limit_value,abs_error");
  double prev = std::numeric_limits<double>::infinity();
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto last_comma = line.rfind(',');
    const double err_col = std::stod(line.substr(last_comma + 1));
    CHECK(err_col < prev);
    prev = err_col;
    ++rows;
  }
  CHECK(rows == 3);
}

TEST_CASE("helstrom speaks both family dialects") {
  const std::string imaging =
      write_file("fam_imaging.json", R"({"kind": "imaging", "N0": 1.0, "gamma": 0.0})");
  const RunResult r1 = run({"helstrom", "--family", imaging, "--theta", "2.0"});
  CHECK(r1.code == 0);
  const nlohmann::json j1 = parse_line(r1.out);
  CHECK(std::abs(j1["theta"][0].get<double>() - 2.0) == 0.0);
  CHECK(std::abs(j1["K"][0][0].get<double>() - 0.5) <= 1e-6);

  const std::string grid = write_file("fam_grid.json", R"({
    "kind": "grid",
    "thetas": [1.9, 2.0, 2.1],
    "matrices": [
      {"dim": 2, "re": [[1.9, 0.0], [0.0, 1.9]]},
      {"dim": 2, "re": [[2.0, 0.0], [0.0, 2.0]]},
      {"dim": 2, "re": [[2.1, 0.0], [0.0, 2.1]]}
    ]})");
  const RunResult r2 = run({"helstrom", "--family", grid, "--theta", "2.0"});
  CHECK(r2.code == 0);
  const nlohmann::json j2 = parse_line(r2.out);
  CHECK(std::abs(j2["K"][0][0].get<double>() - 1.0) <= 1e-10);

  const RunResult r3 = run({"helstrom", "--family", grid, "--theta", "1.9"});
  CHECK(r3.code == 1);  // endpoint has no central neighbors
}

TEST_CASE("imaging sweep emits the expected grid as CSV") {
  const RunResult r = run({"imaging-sweep", "--gamma-list", "0", "--theta-min", "1",
                           "--theta-max", "2", "--theta-step", "0.5"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "gamma,theta,K_normalized");
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto last_comma = line.rfind(',');
    const double k = std::stod(line.substr(last_comma + 1));
    CHECK(std::abs(k - 1.0) <= 1e-6);
    ++rows;
  }
  CHECK(rows == 3);
}
