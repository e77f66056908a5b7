// Runs the rwdom executable and checks outputs and exit codes.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const std::string kCli = RWDOM_CLI_PATH;
const std::string kData = RWDOM_TEST_DATA_DIR;

struct Run {
  int exit_code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string command = kCli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("rwdom_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("select --graph " + kData + "/example1.el --algo bogus").exit_code == 2);
  CHECK(run("select --graph " + kData + "/example1.el --samples 0").exit_code == 2);
  CHECK(run("--version").exit_code == 0);
}

TEST_CASE("gen") {
  TempDir tmp;
  REQUIRE(run("gen --nodes 500 --edges-per-node 4 --seed 3 --out " + (tmp / "a.el")).exit_code == 0);
  REQUIRE(run("gen --nodes 500 --edges-per-node 4 --seed 3 --out " + (tmp / "b.el")).exit_code == 0);
  const std::string a = slurp(tmp / "a.el");
  CHECK(a == slurp(tmp / "b.el"));
  CHECK(!a.empty());
  CHECK(a.back() == '\n');
  CHECK(run("gen --nodes 3 --edges-per-node 5 --seed 1 --out " + (tmp / "c.el")).exit_code == 2);
  CHECK(run("gen --nodes 10 --edges-per-node 2 --out /nonexistent/dir/g.el").exit_code == 3);
}

TEST_CASE("select: worked example with injected walks") {
  const Run r = run("select --graph " + kData + "/example1.el --algo approxf1 --k 2 --walk-len 2 "
                    "--samples 1 --seed 12345 --walks " + kData + "/example1.walks");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["selected"] == json::array({2, 7}));
  CHECK(doc["gains"] == json::array({5.0, 5.0}));
  CHECK(doc["config"]["algorithm"] == "approxf1");
  CHECK(doc["config"]["seed"] == 12345);
  CHECK(doc["version"] == "0.1.0");
  CHECK(doc["elapsed_ms"].contains("index"));
  CHECK(doc["elapsed_ms"].contains("select"));
}

TEST_CASE("select: misc") {
  TempDir tmp;
  REQUIRE(run("gen --nodes 10 --edges-per-node 2 --seed 5 --out " + (tmp / "g.el")).exit_code == 0);
  const std::string graph = " --graph " + (tmp / "g.el");
  const Run zero = run("select" + graph + " --algo degree --k 0");
  REQUIRE(zero.exit_code == 0);
  CHECK(json::parse(zero.out)["selected"].empty());

  const Run plain = run("select" + graph + " --algo dpf1 --k 3 --walk-len 4");
  const Run lazy = run("select" + graph + " --algo dpf1 --k 3 --walk-len 4 --lazy");
  REQUIRE(plain.exit_code == 0);
  REQUIRE(lazy.exit_code == 0);
  CHECK(json::parse(plain.out)["selected"] == json::parse(lazy.out)["selected"]);

  // Same config, same answer; output also goes to a file when asked.
  REQUIRE(run("select" + graph + " --algo approxf2 --k 3 --samples 20 --out " + (tmp / "s.json")).exit_code == 0);
  const Run again = run("select" + graph + " --algo approxf2 --k 3 --samples 20");
  CHECK(json::parse(slurp(tmp / "s.json"))["selected"] == json::parse(again.out)["selected"]);

  // RWDOM_THREADS is honoured without changing the result.
  const Run threaded = run("select" + graph + " --algo dpf1 --k 3 --walk-len 4 --threads 1");
  const std::string env = "RWDOM_THREADS=3 " + kCli + " select" + graph + " --algo dpf1 --k 3 --walk-len 4";
  FILE* pipe = popen(env.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  CHECK(pclose(pipe) == 0);
  CHECK(json::parse(out)["selected"] == json::parse(threaded.out)["selected"]);
}

TEST_CASE("select: size guard and data errors") {
  TempDir tmp;
  REQUIRE(run("gen --nodes 20000 --edges-per-node 10 --seed 1 --out " + (tmp / "big.el")).exit_code == 0);
  CHECK(run("select --graph " + (tmp / "big.el") + " --algo dpf1 --k 100 --walk-len 10").exit_code == 4);
  std::ofstream(tmp / "loop.el") << "0 1\n1 1\n";
  CHECK(run("select --graph " + (tmp / "loop.el") + " --algo degree --k 1").exit_code == 3);
  CHECK(run("select --graph " + (tmp / "loop.el") + " --skip-self-loops --algo degree --k 1").exit_code == 0);
  std::ofstream(tmp / "iso.el") << "0 1\n2 2\n";
  CHECK(run("select --graph " + (tmp / "iso.el") + " --skip-self-loops --algo dpf1 --k 1").exit_code == 3);
  CHECK(run("select --graph " + (tmp / "iso.el") +
            " --skip-self-loops --permissive-isolated --algo dpf1 --k 1").exit_code == 0);
}

TEST_CASE("eval: target mode") {
  std::ofstream path_graph("rwdom_cli_path.el");
  path_graph << "0 1\n1 2\n";
  path_graph.close();
  const Run csv = run("eval --graph rwdom_cli_path.el --targets 2 --walk-len 3 --exact");
  REQUIRE(csv.exit_code == 0);
  std::istringstream lines(csv.out);
  std::string preamble, header, row;
  std::getline(lines, preamble);
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(preamble.rfind("# rwdom 0.1.0 {", 0) == 0);
  CHECK(header == "algorithm,k,L,R_select,R_eval,seed,aht,ehn,select_ms,eval_ms");
  CHECK(row.rfind("given,1,3,0,500,1,2.25,", 0) == 0);

  const Run js = run("eval --graph rwdom_cli_path.el --targets 2 --walk-len 1 --samples 100000 --format json");
  REQUIRE(js.exit_code == 0);
  const json doc = json::parse(js.out);
  CHECK(std::abs(doc["rows"][0]["ehn"].get<double>() - 1.5) <= 0.02);
  CHECK(doc["config"]["targets"] == json::array({2}));

  CHECK(run("eval --graph rwdom_cli_path.el --targets , --walk-len 3").exit_code == 3);
  CHECK(run("eval --graph rwdom_cli_path.el --walk-len 3").exit_code == 2);
  CHECK(run("eval --graph rwdom_cli_path.el --targets 9 --walk-len 3").exit_code == 2);
  std::remove("rwdom_cli_path.el");
}

TEST_CASE("eval: sweep mode") {
  TempDir tmp;
  REQUIRE(run("gen --nodes 200 --edges-per-node 3 --seed 2 --out " + (tmp / "g.el")).exit_code == 0);
  const Run r = run("eval --graph " + (tmp / "g.el") +
                    " --algos degree,approxf1 --ks 5,2 --walk-len 4 --samples 50 --format json");
  REQUIRE(r.exit_code == 0);
  const json rows = json::parse(r.out)["rows"];
  REQUIRE(rows.size() == 4);
  CHECK(rows[0]["algorithm"] == "approxf1");
  CHECK(rows[0]["k"] == 2);
  CHECK(rows[3]["algorithm"] == "degree");
  CHECK(rows[3]["selected"].size() == 5);
}

TEST_CASE("bench") {
  TempDir tmp;
  REQUIRE(run("gen --nodes 300 --edges-per-node 3 --seed 2 --out " + (tmp / "g.el")).exit_code == 0);
  const Run r = run("bench " + (tmp / "g.el") + " --algos approxf1 --k 5 --samples 10");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string preamble, header, row, extra;
  std::getline(lines, preamble);
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header.rfind("graph,n,m,algorithm,", 0) == 0);
  CHECK(row.find(",300,") != std::string::npos);
  CHECK(row.substr(row.size() - 3) == ",ok");
  CHECK_FALSE(std::getline(lines, extra));

  const Run gen = run("bench --gen-nodes 200,400 --edges-per-node 2 --k 3 --samples 5");
  REQUIRE(gen.exit_code == 0);
  std::size_t rows = 0;
  std::istringstream g(gen.out);
  while (std::getline(g, row)) rows += row.rfind("gen:", 0) == 0;
  CHECK(rows == 4);
}

TEST_CASE("dump-index reproduces the worked-example table") {
  const Run r = run("dump-index --graph " + kData + "/example1.el --walk-len 2 --samples 1 --walks " + kData +
                    "/example1.walks");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == slurp(kData + "/example1.index"));
  const Run missing = run("dump-index --graph " + kData + "/example1.el --walk-len 2 --samples 2 --walks " +
                          kData + "/example1.walks");
  CHECK(missing.exit_code == 3);
}
