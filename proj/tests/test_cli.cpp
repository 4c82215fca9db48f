// End-to-end tests of the command-line binary (path injected at compile time
// via HOPX_CLI_PATH). Each test works inside its own scratch directory.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) {
    dir = fs::temp_directory_path() / ("hopx_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string path(const std::string& leaf) const {
    return (dir / leaf).string();
  }
};

int run_cli(const std::string& args) {
  const std::string command = std::string(HOPX_CLI_PATH) + " " + args +
                              " > /dev/null 2> /dev/null";
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (const char ch : text)
    if (ch == '\n') ++lines;
  return lines;
}

}  // namespace

TEST_CASE("cli gen is byte-deterministic per seed") {
  Scratch scratch("gen");
  const std::string a = scratch.path("a.txt");
  const std::string b = scratch.path("b.txt");
  const std::string c = scratch.path("c.txt");
  CHECK(run_cli("gen quadratic --n 6 --m 9 --seed 3 --instance " + a) == 0);
  CHECK(run_cli("gen quadratic --n 6 --m 9 --seed 3 --instance " + b) == 0);
  CHECK(run_cli("gen quadratic --n 6 --m 9 --seed 4 --instance " + c) == 0);
  CHECK(read_file(a) == read_file(b));
  CHECK(read_file(a) != read_file(c));
  CHECK(read_file(a).rfind("hopx-instance v1\n", 0) == 0);
}

TEST_CASE("cli gen covers every kind") {
  Scratch scratch("kinds");
  for (const std::string kind : {"quadratic", "l1", "linear", "point"}) {
    const std::string path = scratch.path(kind + ".txt");
    CHECK(run_cli("gen " + kind + " --n 4 --seed 1 --instance " + path) == 0);
    CHECK(read_file(path).find("kind: " + kind) != std::string::npos);
  }
  CHECK(run_cli("gen cubic --n 4 --seed 1") == 1);
  CHECK(run_cli("gen quadratic --seed 1") == 1);  // missing --n
}

TEST_CASE("cli solve writes a deterministic trace and exits by outcome") {
  Scratch scratch("solve");
  const std::string inst = scratch.path("q.txt");
  REQUIRE(run_cli("gen quadratic --n 8 --seed 5 --instance " + inst) == 0);

  const std::string t1 = scratch.path("t1.csv");
  const std::string t2 = scratch.path("t2.csv");
  CHECK(run_cli("solve --instance " + inst + " --trace " + t1) == 0);
  CHECK(run_cli("solve --instance " + inst + " --trace " + t2) == 0);
  const std::string csv = read_file(t1);
  CHECK(csv == read_file(t2));
  CHECK(csv.rfind("iter,lambda_norm,t_k,sigma_k,objective,kkt_residual,"
                  "elapsed_ms\n",
                  0) == 0);

  // An unreachable tolerance within a tiny budget exits 2 (iteration cap).
  CHECK(run_cli("solve --instance " + inst +
                " --tol 1e-15 --max-iters 2") == 2);

  // Parse and usage failures exit 1.
  CHECK(run_cli("solve --instance " + scratch.path("absent.txt")) == 1);
  CHECK(run_cli("solve") == 1);
  const std::string garbled = scratch.path("garbled.txt");
  {
    std::ofstream out(garbled);
    out << "hopx-instance v1\nkind: l1\nn: 2\nc:\n1 nope\n";
  }
  CHECK(run_cli("solve --instance " + garbled) == 1);
}

TEST_CASE("cli solve on a linear instance takes one productive iteration") {
  Scratch scratch("linear");
  const std::string inst = scratch.path("lin.txt");
  REQUIRE(run_cli("gen linear --n 5 --seed 2 --instance " + inst) == 0);
  const std::string trace = scratch.path("lin.csv");
  CHECK(run_cli("solve --instance " + inst + " --trace " + trace) == 0);
  CHECK(count_lines(read_file(trace)) == 3);  // header + iterations 0 and 1
}

TEST_CASE("cli bisect method") {
  Scratch scratch("bisect");
  const std::string inst = scratch.path("q.txt");
  REQUIRE(run_cli("gen quadratic --n 6 --seed 6 --instance " + inst) == 0);
  CHECK(run_cli("solve --instance " + inst + " --method bisect") == 0);
  // Bisection is a p=2 specialization and must refuse other orders.
  CHECK(run_cli("solve --instance " + inst + " --method bisect --p 3") == 1);
  CHECK(run_cli("solve --instance " + inst + " --method nonsense") == 1);
}

TEST_CASE("cli solve sweeps p values into separate traces") {
  Scratch scratch("sweep");
  const std::string inst = scratch.path("q.txt");
  REQUIRE(run_cli("gen quadratic --n 6 --seed 7 --instance " + inst) == 0);
  const std::string trace = scratch.path("sweep.csv");
  CHECK(run_cli("solve --instance " + inst + " --p 2,3,4 --trace " + trace) ==
        0);
  for (const std::string p : {"2", "3", "4"}) {
    const std::string path = scratch.path("sweep.p" + p + ".csv");
    CHECK(std::filesystem::exists(path));
  }
}

TEST_CASE("cli solve honors lambda0 sources") {
  Scratch scratch("lambda0");
  const std::string inst = scratch.path("q.txt");
  REQUIRE(run_cli("gen quadratic --n 4 --seed 8 --instance " + inst) == 0);
  CHECK(run_cli("solve --instance " + inst + " --lambda0 zero") == 0);
  const std::string lam = scratch.path("lam.txt");
  {
    std::ofstream out(lam);
    out << "0.5 0.5 0.5 0.5\n";
  }
  CHECK(run_cli("solve --instance " + inst + " --lambda0 file:" + lam) == 0);
  CHECK(run_cli("solve --instance " + inst + " --lambda0 sideways") == 1);
}

TEST_CASE("cli check suites pass on their default scales") {
  CHECK(run_cli("check duality --seed 7 --n 8") == 0);
  CHECK(run_cli("check lemma51 --seed 7 --n 8") == 0);
  CHECK(run_cli("check bogus") == 1);
}
