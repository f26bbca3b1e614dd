#include "qcut/serialization.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

namespace {

namespace fs = std::filesystem;

const std::string kCli = QCUT_CLI_PATH;
const fs::path kData = QCUT_TEST_DATA_DIR;

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    return r;
  }
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), got);
  }
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qcut_cli_" + std::string(::testing::UnitTest::GetInstance()
                                          ->current_test_info()
                                          ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  [[nodiscard]] std::string at(const std::string& name) const {
    return (dir_ / name).string();
  }
  [[nodiscard]] static std::string fixture() {
    return "--circuit " + (kData / "cex2_circuit.json").string() + " --network " +
           (kData / "cex2_network.json").string();
  }

  fs::path dir_;
};

TEST_F(Cli, SolvesFixture) {
  for (const char* algo : {"sequence", "split", "overall"}) {
    const auto r = run("solve " + fixture() + " --algo " + algo + " --seed 1");
    EXPECT_EQ(r.status, 0) << algo;
    EXPECT_EQ(r.out.rfind("cost=2 ", 0), 0U) << algo << ": " << r.out;
  }
  const auto dqcm = run("solve " + fixture() + " --algo dqcm --seed 1");
  EXPECT_EQ(dqcm.status, 0);
}

TEST_F(Cli, SolveThenValidate) {
  const auto solve =
      run("solve " + fixture() + " --algo split --seed 3 --serial --out " + at("plan.json"));
  ASSERT_EQ(solve.status, 0);
  const auto ok = run("validate " + fixture() + " --plan " + at("plan.json"));
  EXPECT_EQ(ok.status, 0);
  EXPECT_EQ(ok.out, "ok cost=2\n");

  std::string text = qcut::read_file(at("plan.json"));
  const auto pos = text.find("\"total_cost\": 2");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 15, "\"total_cost\": 1");
  qcut::write_file(at("bad.json"), text);
  const auto bad = run("validate " + fixture() + " --plan " + at("bad.json"));
  EXPECT_EQ(bad.status, 4);
  EXPECT_NE(bad.out.find("cost mismatch"), std::string::npos);
}

TEST_F(Cli, GenerateIsSeedDeterministic) {
  const std::string common = " --qubits 6 --nodes 3 --gates-per-qubit 4 --seed 17";
  ASSERT_EQ(run("generate" + common + " --circuit " + at("c1.json") + " --network " +
                at("n1.json"))
                .status,
            0);
  ASSERT_EQ(run("generate" + common + " --circuit " + at("c2.json") + " --network " +
                at("n2.json"))
                .status,
            0);
  EXPECT_EQ(qcut::read_file(at("c1.json")), qcut::read_file(at("c2.json")));
  EXPECT_EQ(qcut::read_file(at("n1.json")), qcut::read_file(at("n2.json")));
}

TEST_F(Cli, OracleOnFixture) {
  const auto r = run("oracle " + fixture() + " --max-cuts 1");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "dqcm=2\ndqc=2\n");
}

TEST_F(Cli, SweepIsByteIdentical) {
  const std::string args = "sweep --param num_nodes --values 2 3 --num-seeds 2 "
                           "--algos dqcm split --jobs 2 --scale 4 --out ";
  ASSERT_EQ(run(args + at("a.csv")).status, 0);
  ASSERT_EQ(run(args + at("b.csv")).status, 0);
  const std::string a = qcut::read_file(at("a.csv"));
  EXPECT_EQ(a, qcut::read_file(at("b.csv")));
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 1 + 2 * 2 * 2);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("solve --circuit " + at("missing.json") + " --network x").status, 2);
  EXPECT_EQ(run("solve " + fixture() + " --algo annealing").status, 2);

  qcut::write_file(at("small.json"), R"({"num_nodes": 2, "edges": [[0, 1]],
    "storage": [1, 1], "exec_mem": [1, 1]})");
  EXPECT_EQ(run("solve --circuit " + (kData / "cex2_circuit.json").string() +
                " --network " + at("small.json") + " --seed 1")
                .status,
            3);
  qcut::write_file(at("split.json"), R"({"num_nodes": 2, "edges": [],
    "storage": [4, 4], "exec_mem": [1, 1]})");
  EXPECT_EQ(run("solve --circuit " + (kData / "cex2_circuit.json").string() +
                " --network " + at("split.json") + " --seed 1")
                .status,
            3);
}

} // namespace
