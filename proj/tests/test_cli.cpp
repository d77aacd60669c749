#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sdd/io.hpp"

namespace sdd {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sdd_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // exit status of the command, its standard output in `out`
  int run(const std::string& args, std::string* out = nullptr) const {
    const std::string captured = path("stdout.txt");
    const std::string cmd = std::string(SDDROUTE_PATH) + " " + args + " > " + captured + " 2> " +
                            path("stderr.txt");
    const int status = std::system(cmd.c_str());
    if (out != nullptr) {
      *out = read(captured);
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string read(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }

  fs::path dir_;
};

TEST_F(Cli, SolveWritesReport) {
  write("i.json", R"({"horizon": 30, "depot": {"x": 0, "y": 0},
    "orders": [{"id": 1, "x": 3, "y": 4, "release": 0}, {"id": 2, "x": -3, "y": 4, "release": 20}]})");
  std::string out;
  ASSERT_EQ(run("solve --model f1 --instance " + path("i.json") + " --out " + path("r.json") +
                    " --csv " + path("r.csv"),
                &out),
            0);
  EXPECT_NE(out.find("F1 objective 2.000000"), std::string::npos);
  const Json r = read_json_file(path("r.json"));
  EXPECT_EQ(r["objective"].get<double>(), 2.0);
  EXPECT_EQ(r["plan"]["trips"].size(), 2U);
  EXPECT_EQ(read(path("r.csv")).substr(0, 16), "model,objective,");
}

TEST_F(Cli, OracleAndGuard) {
  write("i.json", R"({"horizon": 30, "depot": {"x": 0, "y": 0},
    "orders": [{"id": 1, "x": 3, "y": 4, "release": 0}, {"id": 2, "x": -3, "y": 4, "release": 20}]})");
  std::string out;
  EXPECT_EQ(run("oracle --model F1 --instance " + path("i.json"), &out), 0);
  EXPECT_NE(out.find("objective 2.000000"), std::string::npos);
  EXPECT_EQ(run("oracle --model f1 --instance " + path("i.json")), 0);
  ::setenv("SDD_ORACLE_LIMIT", "1", 1);
  EXPECT_EQ(run("oracle --model f1 --instance " + path("i.json")), 3);
  ::unsetenv("SDD_ORACLE_LIMIT");
}

TEST_F(Cli, ValidateAndMalformedInput) {
  write("bad.json", R"({"horizon": 30, "depot": {"x": 0, "y": 0},
    "orders": [{"id": 1, "x": 3, "y": 4, "release": -1}]})");
  std::string out;
  EXPECT_EQ(run("validate --instance " + path("bad.json"), &out), 1);
  EXPECT_NE(out.find("negative release"), std::string::npos);
  EXPECT_EQ(run("solve --model f1 --instance " + path("bad.json")), 2);
  write("junk.json", "{ not json");
  EXPECT_EQ(run("validate --instance " + path("junk.json")), 2);
  write("extra.json", R"({"horizon": 30, "depot": {"x": 0, "y": 0}, "colour": "red"})");
  EXPECT_EQ(run("validate --instance " + path("extra.json")), 2);
  EXPECT_EQ(run("solve --model f1 --instance " + path("missing.json")), 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("solve --model f9 --instance x.json"), 2);
  EXPECT_EQ(run("solve --instance x.json --bogus"), 2);
  EXPECT_EQ(run(""), 2);
}

TEST_F(Cli, CheckPlanListsTags) {
  write("i.json", R"({"horizon": 250, "depot": {"x": 0, "y": 0},
    "orders": [{"id": 1, "x": 3, "y": 4, "release": 10}]})");
  write("good.json", R"({"model_kind": "F1", "trips": [{"route": [0, 1, 0], "start": 240}],
    "assignments": [{"order": 1, "trip": 0, "delivery_time": 245}], "unserved": []})");
  write("bad.json", R"({"model_kind": "F1", "trips": [{"route": [0, 1, 0], "start": 5}],
    "assignments": [{"order": 1, "trip": 0, "delivery_time": 10}], "unserved": []})");
  std::string out;
  EXPECT_EQ(run("check-plan --instance " + path("i.json") + " --plan " + path("good.json"), &out), 0);
  EXPECT_NE(out.find("ok: F1 objective 1.000000"), std::string::npos);
  EXPECT_EQ(run("check-plan --instance " + path("i.json") + " --plan " + path("bad.json"), &out), 1);
  EXPECT_NE(out.find("F1-release"), std::string::npos);
  EXPECT_NE(out.find("F1-horizon"), std::string::npos);
}

TEST_F(Cli, GenIsDeterministicAndLoadable) {
  ASSERT_EQ(run("gen --family desk --seed 9 --out " + path("a.json")), 0);
  ASSERT_EQ(run("gen --family desk --seed 9 --out " + path("b.json")), 0);
  EXPECT_EQ(read(path("a.json")), read(path("b.json")));
  EXPECT_EQ(run("validate --instance " + path("a.json")), 0);
  ASSERT_EQ(run("gen --orders 0 --out " + path("empty.json")), 0);
  EXPECT_EQ(run("validate --instance " + path("empty.json")), 0);
  ASSERT_EQ(run("gen --orders 5 --stations 2 --radius 30 --deadlines 60,120,240 --seed 4 --out " +
                path("c.json")),
            0);
  EXPECT_EQ(load_instance(path("c.json")).options->deadlines, (std::vector<double>{60, 120, 240}));
  EXPECT_EQ(run("gen --alpha 2"), 2);
}

TEST_F(Cli, CompareOutputs) {
  ASSERT_EQ(run("gen --family collinear --out " + path("i.json")), 0);
  std::string out;
  ASSERT_EQ(run("compare --instance " + path("i.json") + " --csv " + path("t.csv") + " --out " +
                    path("t.json"),
                &out),
            0);
  EXPECT_NE(out.find("F4"), std::string::npos);
  EXPECT_NE(out.find("30.000000"), std::string::npos);
  const std::string csv = read(path("t.csv"));
  EXPECT_NE(csv.find("F3,50.000000,2,"), std::string::npos);
  EXPECT_NE(csv.find("F4,30.000000,2,"), std::string::npos);
  EXPECT_EQ(read_json_file(path("t.json")).size(), 5U);
}

TEST_F(Cli, SimulateCsv) {
  ASSERT_EQ(run("gen --family two-cluster --seed 7 --out " + path("i.json")), 0);
  std::string out;
  ASSERT_EQ(run("simulate --instance " + path("i.json") +
                    " --policy consensus --samples 4 --reps 3 --seed 7",
                &out),
            0);
  EXPECT_EQ(out.substr(0, out.find('\n')), "replication,policy,served,pi_bound");
  EXPECT_NE(out.find("0,consensus(4),"), std::string::npos);
  std::string again;
  run("simulate --instance " + path("i.json") + " --policy consensus --samples 4 --reps 3 --seed 7",
      &again);
  EXPECT_EQ(out, again);
  EXPECT_EQ(run("simulate --instance " + path("i.json") + " --policy myopic,threshold --theta 2 --reps 2 --csv " +
                path("s.csv") + " --out " + path("s.json")),
            0);
  EXPECT_EQ(read_json_file(path("s.json"))["policies"].size(), 2U);
  EXPECT_EQ(run("simulate --instance " + path("i.json") + " --policy psychic"), 2);
  EXPECT_EQ(run("simulate --instance " + path("i.json") + " --grid 0"), 2);
}

}  // namespace
}  // namespace sdd
