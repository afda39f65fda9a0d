#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const char* bin = std::getenv("DETKSAT_CLI");
    if (!bin) GTEST_SKIP() << "DETKSAT_CLI not set";
    bin_ = bin;
    dir_ = fs::temp_directory_path() /
           ("detksat_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override {
    if (!dir_.empty()) fs::remove_all(dir_);
  }

  Invocation run(const std::string& args) {
    const fs::path out = dir_ / "out", err = dir_ / "err";
    const std::string cmd = "'" + bin_ + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  std::string bin_;
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SolveSat) {
  const fs::path f = write("sat.cnf", "p cnf 3 2\n1 2 3 0\n-1 -2 0\n");
  Invocation r = run("solve '" + f.string() + "'");
  EXPECT_EQ(r.code, 10);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["verdict"], "SAT");
  EXPECT_EQ(j["assignment"].get<std::string>().size(), 3u);
}

TEST_F(Cli, SolveUnsatOracle) {
  std::string text = "p cnf 3 8\n";
  for (int s = 0; s < 8; ++s)
    text += std::to_string(s & 1 ? 1 : -1) + " " + std::to_string(s & 2 ? 2 : -2) + " " +
            std::to_string(s & 4 ? 3 : -3) + " 0\n";
  const fs::path f = write("unsat.cnf", text);
  for (const char* mode : {"oracle", "full", "br", "dls"}) {
    Invocation r = run("solve '" + f.string() + "' --mode " + mode);
    EXPECT_EQ(r.code, 20) << mode;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["verdict"], "UNSAT");
    EXPECT_TRUE(j["assignment"].is_null());
  }
}

TEST_F(Cli, SolveDlsReportsCodeSizes) {
  Invocation g = run("gen --k 3 --n 14 --m 40 --seed 3");
  const fs::path f = write("g.cnf", g.out);
  Invocation r = run("solve '" + f.string() + "' --mode dls --threads 2");
  ASSERT_TRUE(r.code == 10 || r.code == 20);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["path"], "DLS");
  EXPECT_FALSE(j["stats"]["code_sizes"].empty());
}

TEST_F(Cli, SolveErrors) {
  EXPECT_EQ(run("solve '" + write("bad.cnf", "p cnf 2 1\n1 -1 0\n").string() + "'").code, 1);
  EXPECT_EQ(run("solve '" + (dir_ / "missing.cnf").string() + "'").code, 1);
  EXPECT_EQ(run("solve '" + write("ok.cnf", "p cnf 1 1\n1 0\n").string() + "' --mode nope").code, 1);
  Invocation r = run("solve '" + write("bad2.cnf", "p cnf 2 1\n1 3 0\n").string() + "'");
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(Cli, GenDeterministic) {
  Invocation a = run("gen --k 3 --n 20 --m 85 --seed 42");
  Invocation b = run("gen --k 3 --n 20 --m 85 --seed 42");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("p cnf 20 85"), std::string::npos);
  Invocation empty = run("gen --k 3 --n 5 --m 0 --seed 1");
  EXPECT_NE(empty.out.find("p cnf 5 0"), std::string::npos);
  EXPECT_EQ(run("gen --k 4 --n 3 --m 2 --seed 1").code, 1);
}

TEST_F(Cli, Bounds) {
  Invocation r = run("bounds");
  EXPECT_EQ(r.code, 0);
  for (const char* row : {"3\t1.32793", "4\t1.49857", "5\t1.59946", "6\t1.66646"})
    EXPECT_NE(r.out.find(row), std::string::npos) << row;
  EXPECT_EQ(run("bounds --kmax 99").code, 1);
}

TEST_F(Cli, ChainTable) {
  Invocation r = run("chain-table --exact");
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string first;
  std::getline(lines, first);
  if (first.rfind("id", 0) == 0) std::getline(lines, first);
  EXPECT_EQ(first.rfind("1\t*\t", 0), 0u) << first;
  EXPECT_NE(first.find("3/7"), std::string::npos);
  EXPECT_NE(first.find("0.985868"), std::string::npos);
  EXPECT_EQ(run("chain-table").code, 0);
  EXPECT_EQ(run("chain-table --generate").code, 0);
}

TEST_F(Cli, Cover) {
  Invocation cube = run("cover --cube 10 --rho 1/3");
  EXPECT_EQ(cube.code, 0);
  EXPECT_NE(cube.out.find("exhaustive checked 1024 uncovered 0"), std::string::npos) << cube.out;
  Invocation chain = run("cover --zeta '*' --nu 2");
  EXPECT_EQ(chain.code, 0);
  EXPECT_NE(chain.out.find("ell 4"), std::string::npos);
  EXPECT_NE(chain.out.find("checked 49 uncovered 0"), std::string::npos) << chain.out;
  Invocation wide = run("cover --cube 24 --rho 1/4");
  EXPECT_EQ(wide.code, 0);
  EXPECT_NE(wide.out.find("sampled"), std::string::npos);
  EXPECT_EQ(run("cover --cube 4 --rho 1/2").code, 1);
  EXPECT_EQ(run("cover --cube 4").code, 1);
}
