#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "eigconf/condition_file.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(EIGCONF_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(EIGCONF_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("eigconf_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

fs::path write(const std::string& name, const std::string& text) {
  auto p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, EcExamples) {
  auto r = run("ec " + data("running_example.txt"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "oracle:  EC = (0, 1)"));
  EXPECT_TRUE(contains(r.out, "theorem: EC = (0, 1)"));
  EXPECT_TRUE(contains(r.out, "y = (2, 0)"));

  r = run("ec " + data("first_ec.txt"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "theorem: EC = (0, 0, 2, 0, 1, 0)"));

  r = run("--format machine ec " + data("one_by_one.json"));
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["oracle"], nlohmann::json({1}));
  EXPECT_EQ(j["theorem"], nlohmann::json({1}));
  EXPECT_EQ(j["agree"], true);
}

TEST(Cli, EcNonGeneric) {
  auto r = run("--format machine ec " + data("shared_eigenvalue.txt"));
  EXPECT_EQ(r.code, 2);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["witness"], "z - 2");
  EXPECT_EQ(j["oracle_rejected"], true);
  EXPECT_EQ(j["theorem_rejected"], true);
}

TEST(Cli, ConditionAndEval) {
  auto out = scratch("c1.json");
  auto r = run("condition " + data("parametric_1x1.txt") + " --ec 1 -o " + out.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "v(d_1) = 1"));
  auto P = eigconf::load_condition_file(out.string());
  EXPECT_EQ(P.clauses.at(0).d.to_string(), "x + a_1 - b_1");

  EXPECT_EQ(run("eval " + out.string() + " p=0 q=1").code, 0);
  EXPECT_EQ(run("eval " + out.string() + " p=1 q=0").code, 1);
  r = run("eval " + out.string() + " p=3/2 q=1.5");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.out, "non-generic"));
  EXPECT_EQ(run("eval " + out.string() + " p=0").code, 3);
  EXPECT_EQ(run("eval " + out.string() + " p=0 q=1 w=2").code, 3);
  EXPECT_EQ(run("eval " + out.string() + " p=0 q=x").code, 3);
}

TEST(Cli, ConditionToStdoutRoundTrips) {
  auto r = run("condition " + data("parametric_1x1.txt") + " --ec 0 --sign-patterns");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(eigconf::serialize_condition(eigconf::parse_condition(r.out)), r.out);
  EXPECT_TRUE(contains(r.out, "\"sign_patterns\":[\"++\",\"+0\"]"));
}

TEST(Cli, ConditionFourByTwo) {
  auto out = scratch("c4.json");
  auto r = run("--format machine condition " + data("parametric_4x2.txt") + " --ec 1,1,0,0 -o " + out.string());
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["y"], nlohmann::json({3, 7, 5, 1}));
  EXPECT_EQ(j["degrees"], nlohmann::json({8, 12, 8, 2}));
  EXPECT_EQ(j["unsatisfiable"], false);
  // diag(0, 2, 5, 6) against diag(1, 3) realizes (1, 1, 0, 0); diag(7, 3) does not.
  std::string F = " f11=0 f12=0 f13=0 f14=0 f22=2 f23=0 f24=0 f33=5 f34=0 f44=6 g12=0";
  EXPECT_EQ(run("eval " + out.string() + F + " g11=1 g22=3").code, 0);
  EXPECT_EQ(run("eval " + out.string() + F + " g11=7 g22=3").code, 1);
  EXPECT_EQ(run("eval " + out.string() + F + " g11=5 g22=3").code, 2);
}

TEST(Cli, ConditionErrors) {
  EXPECT_EQ(run("condition " + data("parametric_1x1.txt") + " --ec 1,0").code, 3);
  EXPECT_EQ(run("condition " + data("parametric_1x1.txt") + " --ec one").code, 3);
  EXPECT_EQ(run("condition " + data("parametric_4x2.txt") + " --ec 1,1,0,0 --degree-cap 10").code, 4);
  auto env = "EIGCONF_DEGREE_CAP=10 " + std::string(EIGCONF_CLI_PATH) + " condition " + data("parametric_4x2.txt") +
             " --ec 1,1,0,0 >/dev/null 2>&1";
  int status = std::system(env.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 4);
  auto p = write("bad.txt", "F:\n1 2\n3 4\nG:\n1\n");
  EXPECT_EQ(run("condition " + p.string() + " --ec 0,0").code, 3);
  EXPECT_EQ(run("ec " + data("parametric_1x1.txt")).code, 3);
  EXPECT_EQ(run("ec /nonexistent/file.txt").code, 3);
}

TEST(Cli, Transform) {
  auto r = run("transform 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "[1 2 3 4]\n[3 4 3 0]\n[3 2 1 4]\n[1 0 1 0]\n"));
  EXPECT_TRUE(contains(r.out, "det = 64"));
  r = run("--format machine transform 6");
  EXPECT_EQ(nlohmann::json::parse(r.out)["det"], "-32768");
  r = run("transform 1");
  EXPECT_TRUE(contains(r.out, "T_1:\n[1]\n"));
  EXPECT_EQ(run("transform 13").code, 4);
  EXPECT_EQ(run("transform 13 --no-enum").code, 0);
  EXPECT_EQ(run("transform 0").code, 3);
}

TEST(Cli, Verify) {
  auto r = run("--format machine verify --m-max 4 --n-max 3 --count 200 --seed 1");
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["passed"], 200);
  EXPECT_EQ(j["total"], 200);
  EXPECT_EQ(run("verify --m-max 1 --n-max 1 --count 50 --seed 1").out.rfind("50/50 agree", 0), 0u);
  EXPECT_EQ(run("verify --count 20 --seed 9").out, run("verify --count 20 --seed 9").out);
  EXPECT_EQ(run("verify --trial-seed 12345").code, 0);
}

TEST(Cli, Usage) {
  EXPECT_EQ(run("").code, 3);
  EXPECT_EQ(run("frobnicate").code, 3);
  EXPECT_EQ(run("--format xml ec " + data("one_by_one.json")).code, 3);
  EXPECT_EQ(run("--help").code, 0);
}
