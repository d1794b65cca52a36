// Copyright 2026 The circlaw Authors.
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

// Runs the CLI with stdout and stderr captured together.
Result cli(const std::string& args) {
  const std::string cmd = std::string(CIRCLAW_CLI_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("circlaw_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("verify-lemmas reports zero violations") {
  const auto r = cli("verify-lemmas --trials 1000 --seed 7");
  CHECK(r.code == 0);
  CHECK(r.out.find("0 violations") != std::string::npos);
}

TEST_CASE("run with a missing config exits 1 naming the path") {
  const auto r = cli("run --config missing.json");
  CHECK(r.code == 1);
  CHECK(r.out.find("missing.json") != std::string::npos);
}

TEST_CASE("constant-case prints the outliers") {
  const auto r = cli("constant-case --n 400 --dist complex-gaussian --seed 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("lambda1") != std::string::npos);
  CHECK(r.out.find("lambda2") != std::string::npos);
  CHECK(r.out.find("s1_central") != std::string::npos);
}

TEST_CASE("bad arguments exit 1") {
  CHECK(cli("no-such-command").code == 1);
  CHECK(cli("sample --n 0").code == 1);
  CHECK(cli("sample --n 5 --dist cauchy").code == 1);
  CHECK(cli("verify-lemmas --trials").code == 1);
}

TEST_CASE("sample and spectrum write files") {
  const auto dir = scratch("files");
  CHECK(cli("sample --n 6 --seed 3 --out " + (dir / "x.csv").string()).code == 0);
  CHECK(slurp(dir / "x.csv").rfind("j,k,re,im", 0) == 0);
  const auto r = cli("spectrum --n 30 --perturbation all-ones --out " + (dir / "eig.csv").string());
  CHECK(r.code == 0);
  CHECK_FALSE(slurp(dir / "eig.csv").empty());
  fs::remove_all(dir);
}

TEST_CASE("delta-scan and circular-law succeed") {
  const auto dir = scratch("delta");
  const auto r = cli("delta-scan --n 40 --perturbation all-ones --step 1 --out " + dir.string());
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "delta.csv"));
  CHECK(cli("circular-law --n 100 --seed 2").code == 0);
  fs::remove_all(dir);
}

TEST_CASE("run writes deterministic reports") {
  const auto dir = scratch("run");
  std::ofstream(dir / "cfg.json") << R"({"name":"cli","dims":[20,30],"distribution":"rademacher",
    "perturbation":{"kind":"all-ones"},"z_grid":{"re_range":[-1,1],"im_range":[-1,1],"step":1},
    "replicates":2,"master_seed":3,"output_dir":")" << (dir / "out").string() << R"("})";
  CHECK(cli("run --config " + (dir / "cfg.json").string()).code == 0);
  const std::string first = slurp(dir / "out" / "report.json");
  CHECK_FALSE(first.empty());
  CHECK(cli("run --workers 2 --config " + (dir / "cfg.json").string()).code == 0);
  CHECK(slurp(dir / "out" / "report.json") == first);

  std::ofstream(dir / "bad.json") << R"({"name":"cli","dims":[30,20]})";
  CHECK(cli("run --config " + (dir / "bad.json").string()).code == 1);
  fs::remove_all(dir);
}
