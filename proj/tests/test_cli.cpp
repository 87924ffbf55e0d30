#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(TRIGDISC_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Data rows of a CSV document (comments and header dropped).
std::vector<std::string> csv_rows(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("trigdisc_cli_" + name)).string();
}

}  // namespace

TEST_CASE("gen-points writes b_n rows") {
  const auto r = run("gen-points --fibonacci 5");
  CHECK(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 8);
  CHECK(rows.front() == "1/8,5/8");
  CHECK(rows.back() == "0/8,0/8");
  CHECK(r.out.find("# tool=trigdisc version=") == 0);
  CHECK(r.out.find("seed=20240611") != std::string::npos);
}

TEST_CASE("gamma-scan rows") {
  const auto r = run("gamma-scan --n-min 3 --n-max 5");
  CHECK(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].rfind("3,3,0,", 0) == 0);
  CHECK(rows[1].rfind("4,5,1,", 0) == 0);
  CHECK(rows[2].rfind("5,8,2,", 0) == 0);
}

TEST_CASE("korobov-search json") {
  const auto r = run("korobov-search --L 2 --d 3");
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["m"] == 251);
  CHECK(j["verified"] == true);
  CHECK(j["cardGamma"] == 81);
  CHECK(j["header"]["seed"] == 20240611);
  CHECK(j["header"]["flags"]["--L"] == "2");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("gen-points --bogus").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("gen-points --fibonacci 5 --format xml").code == 2);
  CHECK(run("gen-points").code == 2);
  CHECK(run("dump-kernel --kind gauss --params 2").code == 2);
  CHECK(run("verify-norms --fibonacci 8 --p 0.5").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("invalid config exits with 2") {
  const auto bad = tmp("bad.json");
  std::ofstream(bad) << R"({"tolerances": {"identity": 0}})";
  CHECK(run("run-suite --config " + bad).code == 2);
  std::ofstream(bad) << R"({"unknown": 1})";
  CHECK(run("run-suite --config " + bad).code == 2);
  std::ofstream(bad) << "not json";
  CHECK(run("run-suite --config " + bad).code == 2);
  CHECK(run("run-suite --config " + tmp("missing.json")).code == 2);
}

TEST_CASE("run-suite with a small config") {
  const auto cfg = tmp("small.json");
  std::ofstream(cfg) << R"({"criteria": [1, 9], "gamma_n_max": 10, "brute_force_n_max": 10})";
  const auto r = run("run-suite --config " + cfg);
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["criteria"].size() == 2);
}

TEST_CASE("dump-kernel") {
  const auto r = run("dump-kernel --kind vallee-poussin --params 1 --format csv");
  CHECK(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1] == "0,1,0");
}

TEST_CASE("aliasing is reported as expected failure") {
  const auto r = run("verify-convolution --fibonacci 8 --j 10,10 --pairs 2");
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["expectation"] == "aliasing");
  CHECK(j["maxError"].get<double>() >= 1e-3);
}

TEST_CASE("gen-points output round-trips through the verification commands") {
  for (const std::string fmt : {"csv", "json"}) {
    const auto file = tmp("f12." + fmt);
    REQUIRE(run("gen-points --fibonacci 12 --format " + fmt + " --out " + file).code == 0);
    for (const std::string cmd :
         {"verify-convolution --j 3,3 --pairs 4", "verify-norms --j 2,4 --p 2,4,inf --trials 2",
          "op-norm-scan --r-min 2 --r-max 3 --format json", "universal-check --N 6 --trials 1"}) {
      auto a = json();
      auto b = json();
      const auto ra = run(cmd + " --fibonacci 12");
      const auto rb = run(cmd + " --points " + file);
      CHECK(ra.code == 0);
      CHECK(rb.code == 0);
      a = json::parse(ra.out);
      b = json::parse(rb.out);
      a.erase("header");
      b.erase("header");
      CHECK(a.dump() == b.dump());
    }
  }
}

TEST_CASE("korobov points round trip with their generator") {
  const auto file = tmp("k.json");
  REQUIRE(run("gen-points --korobov 251 --h 1,3,9 --format json --out " + file).code == 0);
  const auto a = json::parse(run("verify-convolution --korobov 251 --h 1,3,9 --j 2,2,2 --pairs 2").out);
  const auto b = json::parse(run("verify-convolution --points " + file + " --j 2,2,2 --pairs 2").out);
  CHECK(a["maxError"] == b["maxError"]);
  CHECK(a["passed"] == true);
}

TEST_CASE("--out and --seed") {
  const auto file = tmp("gs.csv");
  REQUIRE(run("gamma-scan --n-min 3 --n-max 4 --seed 7 --out " + file).code == 0);
  std::ifstream in(file);
  std::stringstream s;
  s << in.rdbuf();
  CHECK(s.str().find("seed=7") != std::string::npos);
  CHECK(csv_rows(s.str()).size() == 2);
}
