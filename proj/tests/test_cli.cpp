#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

const std::string cli = KERRCAT_CLI;
const fs::path golden = KERRCAT_GOLDEN_DIR;

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("kerrcat_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + cli + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

// Top eigenvalue of one parity block of the Kerr-cat Hamiltonian.
double top_block_level(double delta, double eps2, int dim, int parity) {
  std::vector<int> states;
  for (int n = parity; n < dim; n += 2) states.push_back(n);
  const std::size_t m = states.size();
  oracle::Matrix h(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    const double n = states[i];
    h[i][i] = delta * n - n * (n - 1.0);
    if (i + 1 < m) h[i][i + 1] = h[i + 1][i] = eps2 * std::sqrt((n + 1.0) * (n + 2.0));
  }
  return oracle::jacobi_eigenvalues(h).front();
}

std::string splitting_args(const Scratch& s, const std::string& out, const std::string& extra = "") {
  return "splitting --config " + (golden / "splitting_5x5.json").string() + " --out " + s / out + " --format csv " +
         extra;
}

}  // namespace

TEST_CASE("golden splitting grid") {
  Scratch s;
  REQUIRE(run(splitting_args(s, "a.csv")) == 0);
  CHECK(slurp(s / "a.csv") == slurp((golden / "splitting_5x5.csv").string()));

  const auto rows = read_csv((golden / "splitting_5x5.csv").string());
  REQUIRE(rows.size() == 26);
  CHECK(rows[0][5] == "de_signed");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const double d = std::stod(rows[r][0]), e = std::stod(rows[r][1]);
    const double expected = top_block_level(d, e, 60, 0) - top_block_level(d, e, 60, 1);
    CHECK(std::abs(std::stod(rows[r][5]) - expected) < 1e-9);
  }

  // A larger truncation reproduces the same numbers.
  REQUIRE(run(splitting_args(s, "b.csv", "--set params.dim=90")) == 0);
  const auto wide = read_csv(s / "b.csv");
  REQUIRE(wide.size() == rows.size());
  for (std::size_t r = 1; r < rows.size(); ++r)
    for (int c : {4, 5}) CHECK(std::stod(wide[r][c]) == doctest::Approx(std::stod(rows[r][c])).epsilon(1e-9));
}

TEST_CASE("output is independent of the thread count") {
  Scratch s;
  REQUIRE(run(splitting_args(s, "t1.csv"), "KERRCAT_THREADS=1") == 0);
  REQUIRE(run(splitting_args(s, "t4.csv"), "KERRCAT_THREADS=4") == 0);
  REQUIRE(run(splitting_args(s, "t4b.csv", "--threads 3")) == 0);
  CHECK(slurp(s / "t1.csv") == slurp(s / "t4.csv"));
  CHECK(slurp(s / "t1.csv") == slurp(s / "t4b.csv"));

  spit(s / "w.json", R"({"params": {"delta": 2.0, "eps2": 1.0}, "wigner": {"nx": 21, "np": 21}})");
  const std::string w = "wigner --config " + s / "w.json" + " --format json --out ";
  REQUIRE(run(w + s / "w1.json", "KERRCAT_THREADS=1") == 0);
  REQUIRE(run(w + s / "w2.json", "KERRCAT_THREADS=5") == 0);
  CHECK(slurp(s / "w1.json") == slurp(s / "w2.json"));
}

TEST_CASE("row counts") {
  Scratch s;
  spit(s / "sp.json",
       R"({"params": {"eps2": 1.0, "dim": 40}, "axes": [{"name": "delta", "start": 0, "stop": 6, "count": 7}],
           "spectrum": {"levels": 4}})");
  REQUIRE(run("spectrum --config " + s / "sp.json" + " --out " + s / "sp.csv" + " --format csv") == 0);
  const auto sp = read_csv(s / "sp.csv");
  CHECK(sp.size() == 8);

  spit(s / "w.json", R"({"params": {"delta": 0.0, "eps2": 0.5}, "wigner": {"nx": 7, "np": 9}})");
  REQUIRE(run("wigner --config " + s / "w.json" + " --out " + s / "w.csv" + " --format csv") == 0);
  CHECK(read_csv(s / "w.csv").size() == 64);

  spit(s / "c.json", R"({"calibrate": {"omega_x": 4.0, "eps_x": 1.0}})");
  REQUIRE(run("calibrate --config " + s / "c.json" + " --out " + s / "c.csv" + " --format csv") == 0);
  const auto c = read_csv(s / "c.csv");
  REQUIRE(c.size() == 2);
  CHECK(c[0][3] == "alpha0_sq");
  CHECK(c[1][3] == "1");
}

TEST_CASE("exit codes") {
  Scratch s;
  spit(s / "ok.json", R"({"params": {"delta": 1.0, "eps2": 1.0}})");
  const std::string ok = " --config " + s / "ok.json" + " --out " + s / "o.csv";
  CHECK(run("splitting" + ok + " --format csv") == 0);

  CHECK(run("nonsense" + ok + " --format csv") == 2);
  CHECK(run("splitting" + ok + " --format xml") == 2);
  CHECK(run("splitting --config " + s / "missing.json" + " --out " + s / "o.csv --format csv") == 2);
  CHECK(run("splitting" + ok + " --format csv --set params.kerr=0") == 2);
  CHECK(run("splitting" + ok + " --format csv --set params.delta=abc") == 2);
  CHECK(run("splitting" + ok + " --format csv --set bogus=1") == 2);
  CHECK(run("splitting" + ok + " --format csv", "KERRCAT_THREADS=zero") == 2);
  CHECK(run("splitting --config " + s / "ok.json" + " --out /nonexistent/dir/o.csv --format csv") == 2);
  spit(s / "bad.json", "{ not json");
  CHECK(run("splitting --config " + s / "bad.json" + " --out " + s / "o.csv --format csv") == 2);

  // The WKB formula has no value for D <= 0; that row is emitted as NaN.
  spit(s / "neg.json",
       R"({"params": {"eps2": 1.0}, "axes": [{"name": "delta", "start": -1, "stop": 1, "count": 3}]})");
  CHECK(run("splitting --config " + s / "neg.json" + " --out " + s / "n.csv --format csv") == 3);
  const auto rows = read_csv(s / "n.csv");
  REQUIRE(rows.size() == 4);
  CHECK(rows[1][6] == "nan");
  CHECK(rows[1].back() == "6");
  CHECK(rows[3].back() == "0");
}
