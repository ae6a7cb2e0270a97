#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("UNBREAK_CLI");
  REQUIRE_MESSAGE(p != nullptr, "UNBREAK_CLI must point at the binary");
  return p;
}

std::string golden_dir() {
  const char* p = std::getenv("UNBREAK_GOLDEN");
  REQUIRE_MESSAGE(p != nullptr, "UNBREAK_GOLDEN must point at the golden files");
  return p;
}

RunResult run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  while (size_t got = fread(buffer, 1, sizeof buffer, pipe)) {
    result.out.append(buffer, got);
  }
  int status = pclose(pipe);
  result.exit_code = WEXITSTATUS(status);
  return result;
}

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = "/tmp/unbreak_test_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing file: " << path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const char* kPath9 =
    "p 9 8\n"
    "e 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 7\ne 7 8\n";

const char* kMwcuPath =
    "p 3 2\n"
    "e 0 1\ne 1 2\n"
    "t 0\nt 2\n"
    "r 0\nr 2\n";

}  // namespace

TEST_CASE("breakcheck reports a witness on a long path") {
  std::string file = temp_file("path9.gr", kPath9);
  RunResult r = run("breakcheck " + file + " --s 3 --c 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("WITNESS") != std::string::npos);
  CHECK(r.out.find("separator:") != std::string::npos);
}

TEST_CASE("breakcheck certifies complete graphs") {
  std::string file = temp_file("k5.gr",
                               "p 5 10\n"
                               "e 0 1\ne 0 2\ne 0 3\ne 0 4\ne 1 2\n"
                               "e 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
  RunResult r = run("breakcheck " + file + " --s 2 --c 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("UNBREAKABLE 2 2") != std::string::npos);
}

TEST_CASE("malformed input exits 2 with a line number") {
  std::string file = temp_file("bad.gr", "p 2 1\ne 0 9\n");
  RunResult r = run("breakcheck " + file + " --s 1 --c 1");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("line 2") != std::string::npos);
}

TEST_CASE("unknown command exits 2 with usage text") {
  RunResult r = run("frobnicate");
  CHECK(r.exit_code == 2);
}

TEST_CASE("oracle over budget exits 3") {
  std::ostringstream big;
  big << "p 13 12\n";
  for (int i = 0; i + 1 < 13; ++i) big << "e " << i << " " << i + 1 << "\n";
  big << "t 0\nt 12\nr 0\nr 12\n";
  std::string file = temp_file("big.gr", big.str());
  RunResult r = run("oracle mwcu " + file + " --k 1");
  CHECK(r.exit_code == 3);
}

TEST_CASE("structured output matches the golden files") {
  std::string file = temp_file("path9.gr", kPath9);
  RunResult witness = run("--format structured breakcheck " + file + " --s 3 --c 1");
  CHECK(witness.exit_code == 0);
  CHECK(witness.out == read_file(golden_dir() + "/breakcheck_path9.txt"));

  std::string mfile = temp_file("mwcu_path.gr", kMwcuPath);
  RunResult mwcu = run("--format structured mwcu " + mfile + " --k 1");
  CHECK(mwcu.exit_code == 0);
  CHECK(mwcu.out == read_file(golden_dir() + "/mwcu_path.txt"));

  // identical runs with identical seeds stay byte-identical
  RunResult again = run("--format structured breakcheck " + file + " --s 3 --c 1");
  CHECK(again.out == witness.out);
}

TEST_CASE("uset build writes a verifiable family") {
  std::string out = "/tmp/unbreak_test_uset.txt";
  RunResult built = run("uset build --n 8 --k 3 --p 1 --out " + out);
  CHECK(built.exit_code == 0);
  RunResult verified = run("uset verify " + out);
  CHECK(verified.exit_code == 0);
  CHECK(verified.out.find("OK") != std::string::npos);
}

TEST_CASE("enumconn lists sets lexicographically") {
  std::string file = temp_file("star.gr", "p 4 3\ne 0 1\ne 0 2\ne 0 3\n");
  RunResult r = run("enumconn " + file + " --root 0 --p 2 --q 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0\n0 1\n0 2\n0 3\n");
}

TEST_CASE("fsm table, understand, and solve round trip") {
  std::string table = "/tmp/unbreak_test_table.txt";
  RunResult built =
      run("fsm table --prop even_vertex_count --c 1 --ubound 4 --cbound 4 --out " +
          table);
  CHECK(built.exit_code == 0);

  std::string file = temp_file("p5.gr", "p 5 4\ne 0 1\ne 1 2\ne 2 3\ne 3 4\n");
  RunResult solved =
      run("fsm solve " + file + " --prop even_vertex_count --table " + table);
  CHECK(solved.exit_code == 0);
  CHECK(solved.out.find("false") != std::string::npos);

  RunResult understood = run("fsm understand " + file + " --table " + table);
  CHECK(understood.exit_code == 0);
  CHECK(understood.out.find("class") != std::string::npos);
}

TEST_CASE("mwcu answers yes with the deleted vertices") {
  std::string file = temp_file("mwcu_path.gr", kMwcuPath);
  RunResult r = run("mwcu " + file + " --k 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("YES 1") != std::string::npos);
}

TEST_CASE("pendant finds a single-vertex set") {
  std::string file = temp_file("star.gr", "p 4 3\ne 0 1\ne 0 2\ne 0 3\n");
  RunResult r = run("pendant " + file + " --k 3 --t 0 --prop constant_true");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("YES") != std::string::npos);
}
