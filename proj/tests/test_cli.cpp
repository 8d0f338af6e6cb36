// Copyright 2026 The chi2cavity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CHI2CAVITY_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

struct TempDir {
  std::filesystem::path path = std::filesystem::temp_directory_path() / "chi2cavity_test_cli";
  TempDir() { std::filesystem::create_directories(path); }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("point") {
  const Run r = run("point --g 0.5 --drive-strength 0.05");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("delta,g,kappa2,drive_strength,delta_f,direction,g2_aa,g2_bb,n_a,n_b,status\n", 0) == 0);
  CHECK(r.out.find("0,0.5,1,0.05,0,left,0.25415290051,0.0642794641356,") != std::string::npos);

  const Run vac = run("point --g 0.5 --format json");
  CHECK(vac.code == 0);
  const auto j = nlohmann::json::parse(vac.out);
  CHECK(j["g2_aa"].is_null());
  CHECK(j["status"] == "vacuum-undefined");
}

TEST_CASE("exit codes") {
  CHECK(run("point --g -1").code == 1);
  CHECK(run("point --direction up").code == 1);
  CHECK(run("point --format xml --g 1 --drive-strength 0.05").code == 1);
  CHECK(run("").code == 1);
  CHECK(run("figure fig9").code == 1);
  CHECK(run("sweep --axis1 g:1:1:5").code == 1);
  CHECK(run("sweep --axis1 omega:0:1:5").code == 1);
  CHECK(run("sweep --axis1 g:0:1").code == 1);
  CHECK(run("--help").code == 0);
  // A drive this strong leaves a residual far above the solver tolerance.
  CHECK(run("point --drive-strength 1e12 --g 1 --na-cut 2 --nb-cut 1").code == 2);
}

TEST_CASE("sweep writes partial results on solver failure") {
  TempDir tmp;
  const auto out = tmp.path / "partial.csv";
  const Run r = run("sweep --axis1 drive_strength:0.05:1e12:2 --g 1 --na-cut 2 --nb-cut 1 --out " + out.string());
  CHECK(r.code == 2);
  const std::string csv = slurp(out);
  CHECK(count_lines(csv) == 3);
  CHECK(csv.find(",ok\n") != std::string::npos);
  CHECK(csv.find("1e+12,,,,,solver-failure\n") != std::string::npos);
}

TEST_CASE("sweep grid, directions and determinism") {
  const std::string args =
      "sweep --axis1 g:0.5:1:3 --axis2 delta:-0.5:0.5:2 --drive-strength 0.05 --delta-f 0.2 "
      "--directions left,right --outputs g2_bb,n_b";
  const Run a = run(args + " --threads 2");
  const Run b = run(args + " --threads 1");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(count_lines(a.out) == 1 + 2 * 3 * 2);
  CHECK(a.out.rfind("direction,g,delta,g2_bb,n_b,status\n", 0) == 0);
}

TEST_CASE("config file with flag overrides") {
  TempDir tmp;
  const auto cfg = tmp.path / "spec.json";
  std::ofstream(cfg) << R"({"axis1": {"parameter": "g", "start": 0.5, "stop": 1.5, "count": 3},
                            "fixed": {"drive_strength": 0.05, "kappa2": 2.0},
                            "outputs": ["g2_bb"]})";
  const Run base = run("sweep --config " + cfg.string() + " --format json");
  CHECK(base.code == 0);
  const auto j = nlohmann::json::parse(base.out);
  CHECK(j["rows"].size() == 3);
  CHECK(j["metadata"]["spec"]["fixed"]["kappa2"] == 2.0);

  const Run over = run("sweep --config " + cfg.string() + " --kappa2 1 --axis1 g:0.5:1.5:4");
  CHECK(over.code == 0);
  CHECK(count_lines(over.out) == 5);

  CHECK(run("sweep --config " + (tmp.path / "missing.json").string()).code == 1);
  std::ofstream(tmp.path / "bad.json") << "{";
  CHECK(run("sweep --config " + (tmp.path / "bad.json").string()).code == 1);
}

TEST_CASE("figure presets") {
  const Run spec = run("figure fig7b --print-spec");
  CHECK(spec.code == 0);
  const auto j = nlohmann::json::parse(spec.out);
  CHECK(j["axis1"]["count"] == 401);
  CHECK(j["directions"].size() == 2);

  const Run small = run("figure fig4a --resolution 3 --format json");
  CHECK(small.code == 0);
  CHECK(nlohmann::json::parse(small.out)["rows"].size() == 9);
}

TEST_CASE("eigen, optimal-g and fizeau") {
  const Run e = run("eigen --omega1 100 --g 5 --na-cut 4 --nb-cut 2 --levels 4");
  CHECK(e.code == 0);
  CHECK(e.out.find("2,192.928932188,") != std::string::npos);
  CHECK(e.out.find("3,207.071067812,") != std::string::npos);

  const Run g = run("optimal-g --kappa2 2 --drive-strength 0.05");
  CHECK(g.out == "1.22525507548\n");

  const Run f = run("fizeau --kappa1 6.283185307179586e6 --power 1e-15");
  CHECK(f.code == 0);
  CHECK(f.out.find("delta_f_rad_per_s,126796672.505\n") != std::string::npos);
  CHECK(f.out.find("drive_strength_rad_per_s,313135.578529\n") != std::string::npos);
  CHECK(run("fizeau --power 1e-15").code == 1);
  CHECK(run("fizeau --radius -1").code == 1);
}
