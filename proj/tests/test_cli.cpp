// Copyright 2026 The qtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "qtele_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string(QTELE_CLI) + " " + args + " >" + out.string() + " 2>" +
                          err.string();
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("fidelity-adc csv with sidecar metadata") {
  const fs::path out = scratch() / "adc.csv";
  const Run r = run("fidelity-adc --resource werner:0.8 --seed 4 --out " + out.string());
  REQUIRE(r.status == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("series,p_a,p_b,F,F_alt\n", 0) == 0);
  CHECK(count_lines(csv) == 1 + 3 * 101);
  const auto meta = nlohmann::json::parse(slurp(out.string() + ".meta.json"));
  CHECK(meta.at("seed") == 4);
  CHECK(meta.at("config").at("resource") == "werner:0.8");
  CHECK(meta.contains("version"));
}

TEST_CASE("config file and json output") {
  const fs::path cfg = scratch() / "cfg.json";
  std::ofstream(cfg) << R"({"grid": {"p_a": {"points": 3}, "p_b": {"points": 4}}})";
  const Run r = run("fef-contour --config " + cfg.string() + " --format json");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("rows").size() == 12);
  CHECK(j.at("metadata").at("config").at("kind") == "fef_contour");
}

TEST_CASE("calib sides") {
  const Run bob = run("calib --side bob");
  REQUIRE(bob.status == 0);
  CHECK(bob.out.rfind("angle_deg,p_theory,p_est\n", 0) == 0);
  const Run alice = run("calib --side alice --format json");
  REQUIRE(alice.status == 0);
  CHECK(nlohmann::json::parse(alice.out).at("metadata").at("config").at("kind") == "calib_alice");
}

TEST_CASE("enhance and teleport emit json") {
  const Run e = run("enhance --resource ideal");
  REQUIRE(e.status == 0);
  const auto j = nlohmann::json::parse(e.out);
  CHECK(j.at("crossing_found") == true);
  CHECK(j.contains("F_max"));

  const Run t = run("teleport --input D --pa 0.2 --pb 0.4");
  REQUIRE(t.status == 0);
  const auto tj = nlohmann::json::parse(t.out);
  CHECK(tj.at("outcomes").size() == 4);
  CHECK(tj.at("outcomes")[0].at("label") == "0H");
}

TEST_CASE("config errors exit with 2 and one line on stderr") {
  for (const std::string args :
       {"fidelity-adc --resource nonsense", "fef-contour --stats counts:0:3",
        "fef-contour --config /no/such/file.json", "sensitivity --stats counts:10:2",
        "fidelity-adc --format xml", "no-such-command", "teleport --input Q",
        "fef-contour --resource file:/no/such/rho.json"}) {
    CAPTURE(args);
    const Run r = run(args);
    CHECK(r.status == 2);
    CHECK(count_lines(r.err) == 1);
  }
  const fs::path bad = scratch() / "bad.json";
  std::ofstream(bad) << "{not json";
  const Run r = run("fef-contour --config " + bad.string());
  CHECK(r.status == 2);
  CHECK(count_lines(r.err) == 1);
}

TEST_CASE("help exits cleanly") {
  CHECK(run("--help").status == 0);
}
