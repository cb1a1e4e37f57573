// SPDX-License-Identifier: Apache-2.0
// Drives the installed command-line tool end to end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::path(MAHC_TEST_TMP) / "cli";

int mahc(const std::string& args) {
  const std::string cmd = std::string("\"") + MAHC_CLI_PATH + "\" " + args + " >" +
                          (kWork / "stdout.txt").string() + " 2>" + (kWork / "stderr.txt").string();
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

// stats.csv without the seconds column
std::string stats_without_time(const fs::path& dir) {
  std::string out;
  for (auto row : csv(dir / "stats.csv")) {
    row.pop_back();
    for (const auto& c : row) out += c + ',';
    out += '\n';
  }
  return out;
}

struct Workspace {
  Workspace() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
  }
};

const fs::path& data200() {
  static const fs::path p = [] {
    fs::create_directories(kWork.parent_path() / "cli_data");
    const fs::path out = kWork.parent_path() / "cli_data" / "n200.jsonl";
    const std::string cmd = std::string("\"") + MAHC_CLI_PATH +
                            "\" gen --classes 8 --members-min 10 --members-max 45 --seed 4 --output " +
                            out.string() + " >/dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    return out;
  }();
  return p;
}

}  // namespace

TEST_CASE("gen writes labelled segments") {
  Workspace w;
  REQUIRE(mahc("gen --classes 3 --members 4 --seed 2 --output " + (kWork / "g.jsonl").string()) == 0);
  CHECK(slurp(kWork / "stdout.txt").find("segments 12") != std::string::npos);
  const std::string body = slurp(kWork / "g.jsonl");
  CHECK(std::count(body.begin(), body.end(), '\n') == 12);
  CHECK(body.find("\"label\"") != std::string::npos);
}

TEST_CASE("baseline run prints an F-measure") {
  Workspace w;
  const fs::path out = kWork / "base";
  REQUIRE(mahc("run --mode ahc-baseline --input " + data200().string() + " --out-dir " + out.string()) == 0);
  CHECK(slurp(kWork / "stdout.txt").find("fmeasure ") != std::string::npos);
  const auto assignment = csv(out / "assignment.csv");
  CHECK(assignment.front() == std::vector<std::string>{"segment_id", "cluster_id"});
  const auto stats = csv(out / "stats.csv");
  REQUIRE(stats.size() == 2);
  CHECK(stats[0] == std::vector<std::string>{"iter", "P", "max_occ", "min_occ", "S", "K_est",
                                             "fmeasure", "seconds"});
  CHECK(stats[1][1] == "1");
  CHECK(fs::exists(out / "manifest.json"));

  REQUIRE(mahc("eval --input " + data200().string() + " --assignment " + (out / "assignment.csv").string()) == 0);
  CHECK(slurp(kWork / "stdout.txt").rfind("fmeasure ", 0) == 0);
  CHECK(stod(slurp(kWork / "stdout.txt").substr(9)) == doctest::Approx(stod(stats[1][6])).epsilon(1e-15));
}

TEST_CASE("managed run keeps every post-split subset under beta") {
  Workspace w;
  const fs::path out = kWork / "m";
  REQUIRE(mahc("run --mode mahc-m --p0 4 --beta 60 --max-iters 6 --seed 3 --input " + data200().string() +
               " --out-dir " + out.string()) == 0);
  const auto stats = csv(out / "stats.csv");
  REQUIRE(stats.size() >= 2);
  const std::size_t n = csv(out / "assignment.csv").size() - 1;
  CHECK(std::stoul(stats[1][2]) == (n + 3) / 4);
  for (std::size_t r = 2; r < stats.size(); ++r) CHECK(std::stoul(stats[r][2]) <= 60);
}

TEST_CASE("unmanaged run records occupancy growth") {
  Workspace w;
  const fs::path out = kWork / "plain";
  REQUIRE(mahc("run --mode mahc --p0 4 --max-iters 5 --input " + data200().string() + " --out-dir " +
               out.string()) == 0);
  const auto stats = csv(out / "stats.csv");
  CHECK(stats.size() >= 2);
}

TEST_CASE("repeat runs and worker counts give identical outputs") {
  Workspace w;
  const std::string common =
      "run --mode mahc-m --p0 3 --beta 50 --max-iters 5 --seed 11 --input " + data200().string();
  REQUIRE(mahc(common + " --workers 1 --out-dir " + (kWork / "a").string()) == 0);
  REQUIRE(mahc(common + " --workers 8 --out-dir " + (kWork / "b").string()) == 0);
  REQUIRE(mahc("run --manifest " + (kWork / "a" / "manifest.json").string() + " --out-dir " +
               (kWork / "c").string()) == 0);
  const std::string ref = slurp(kWork / "a" / "assignment.csv");
  CHECK(ref == slurp(kWork / "b" / "assignment.csv"));
  CHECK(ref == slurp(kWork / "c" / "assignment.csv"));
  CHECK(stats_without_time(kWork / "a") == stats_without_time(kWork / "b"));
  CHECK(stats_without_time(kWork / "a") == stats_without_time(kWork / "c"));
}

TEST_CASE("exit codes") {
  Workspace w;
  CHECK(mahc("") == 1);
  CHECK(mahc("frobnicate") == 1);
  CHECK(mahc("run --mode nope --input x --out-dir y") == 1);
  CHECK(mahc("run --mode mahc-m --input " + data200().string() + " --out-dir " + (kWork / "x").string()) == 1);
  CHECK(mahc("run --mode ahc-baseline --input /nonexistent.jsonl --out-dir " + (kWork / "x").string()) == 2);
  {
    std::ofstream bad(kWork / "ragged.jsonl");
    bad << "{\"id\": 1, \"frames\": [[0, 1]]}\n{\"id\": 2, \"frames\": [[0], [1, 2]]}\n";
  }
  CHECK(mahc("run --mode ahc-baseline --input " + (kWork / "ragged.jsonl").string() + " --out-dir " +
             (kWork / "x").string()) == 2);
  CHECK(slurp(kWork / "stderr.txt").find("line 2") != std::string::npos);
}
