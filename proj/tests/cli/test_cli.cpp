#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

using nlohmann::json;

namespace {

struct Run {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string fixture(const std::string& name) { return std::string(PROFINITE_FIXTURES) + "/" + name; }

Run run(const std::string& args) {
  const std::string err_path = ::testing::TempDir() + "profinite_cli_stderr.txt";
  const std::string cmd = std::string(PROFINITE_TOOL) + " " + args + " 2>" + err_path;
  FILE* pipe = popen(cmd.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, slurp(err_path)};
}

TEST(Cli, DefaultVerifyPassesEveryCheck) {
  const auto r = run("verify");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto report = json::parse(r.out);
  EXPECT_EQ(report["artifact"], "profinite");
  EXPECT_EQ(report["command"], "verify");
  EXPECT_EQ(report["scenario_hash"].get<std::string>().size(), 16u);
  EXPECT_EQ(report["result"]["status"], "pass");
  EXPECT_EQ(report["result"]["summary"]["failed"], 0);
  for (const auto& c : report["result"]["checks"]) {
    EXPECT_EQ(c["status"], "pass") << c.dump();
    EXPECT_GT(c["cases"].get<int>(), 0) << c["name"];
  }
}

TEST(Cli, OverlappingBallsExitTwoWithDiagnostic) {
  const auto r = run("verify --config " + fixture("overlapping_balls.json"));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("OverlappingBalls"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, BadConfigsExitTwo) {
  for (const char* f : {"unknown_key.json", "not_prime.json"}) {
    const auto r = run(std::string("verify --config ") + fixture(f));
    EXPECT_EQ(r.exit_code, 2) << f;
    EXPECT_NE(r.err.find("ConfigInvalid"), std::string::npos) << r.err;
  }
  EXPECT_EQ(run("verify --config " + fixture("does_not_exist.json")).exit_code, 2);
  EXPECT_EQ(run("verify --format xml").exit_code, 2);
  EXPECT_EQ(run("frobnicate").exit_code, 2);
  EXPECT_EQ(run("").exit_code, 2);
}

TEST(Cli, FaultyPermTowerExitsOneNamingTheLaw) {
  const auto r = run("verify --config " + fixture("faulty_perm_tower.json"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("perm-tower-fixture"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("pi^l_k o s_l = s_k o pi^l_k"), std::string::npos) << r.err;
  const auto report = json::parse(r.out);
  EXPECT_EQ(report["result"]["status"], "fail");
  EXPECT_EQ(report["result"]["summary"]["failed"], 1);
  const auto& last = report["result"]["checks"].back();
  EXPECT_EQ(last["name"], "perm-tower-fixture");
  EXPECT_EQ(last["witness"]["fine_level"], 2);
  EXPECT_EQ(last["witness"]["coarse_level"], 1);

  const auto nb = run("verify --config " + fixture("non_bijective_level.json"));
  EXPECT_EQ(nb.exit_code, 1);
  EXPECT_NE(nb.err.find("bijection"), std::string::npos) << nb.err;

  EXPECT_EQ(run("verify --config " + fixture("valid_perm_tower.json")).exit_code, 0);
}

TEST(Cli, VerifyIsByteIdenticalAcrossRunsAndJobs) {
  const auto a = run("verify --seed 7");
  const auto b = run("verify --seed 7");
  const auto c = run("verify --seed 7 --jobs 4");
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_NE(a.out, run("verify --seed 8").out);
}

TEST(Cli, SeedFlagOverridesConfigSeed) {
  const auto report = json::parse(run("verify --seed 12345").out);
  EXPECT_EQ(report["scenario"]["seed"], "12345");
}

TEST(Cli, OutWritesTheSameReport) {
  const std::string path = ::testing::TempDir() + "profinite_cli_report.json";
  const auto r = run("diff-tower --out " + path);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(path), run("diff-tower").out);
}

TEST(Cli, DiffTowerOrdersAtP2K2) {
  const auto r = run("diff-tower --config " + fixture("diff_tower_p2_k2.json"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto body = json::parse(r.out)["result"];
  EXPECT_EQ(body["orders"], json({"2", "24"}));
  EXPECT_EQ(body["divisibility"]["verified"].size(), 2u);
  EXPECT_EQ(body["divisibility"]["literal"].size(), 2u);
  EXPECT_TRUE(body["divisibility"]["verified"][1]["divides"].get<bool>());
  EXPECT_EQ(body["sample_tower"].size(), 2u);
  const auto csv = run("diff-tower --format csv --config " + fixture("diff_tower_p2_k2.json")).out;
  EXPECT_EQ(csv, "level,order,verified_exponent,literal_exponent\n1,2,1,1\n2,24,2,2\n");
}

TEST(Cli, LoopTableHasThreeClasses) {
  const auto r = run("loop-table --config " + fixture("loop_table_n1_2.json"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto body = json::parse(r.out)["result"];
  EXPECT_EQ(body["class_count"], 3);
  EXPECT_EQ(body["classes"], json::parse(R"([[], [[["1"], 1]], [[["1"], 2]]])"));
  EXPECT_EQ(body["cayley"], json::parse("[[0, 1, 2], [1, 2, null], [2, null, null]]"));
  const auto& rank = body["ranks"][0];
  EXPECT_EQ(rank["codomain_size"], 2);
  EXPECT_EQ(rank["computed_rank"], 1);
  EXPECT_EQ(rank["claimed_rank"], 2);
}

TEST(Cli, CompleteGeometricFixture) {
  const auto r = run("complete");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto body = json::parse(r.out)["result"];
  EXPECT_EQ(body["limit"], json::parse(R"([{"index": 1, "residue": "7"}])"));
  EXPECT_EQ(run("complete --format csv").out, "precision,index,residue\n1,1,1\n2,1,3\n3,1,7\n");

  const auto p3 = json::parse(run("complete --config " + fixture("geometric_p3.json")).out)["result"];
  EXPECT_EQ(p3["limit"][0]["residue"], "80");
}

TEST(Cli, ReportCombinesTheDemos) {
  const auto r = run("report");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto body = json::parse(r.out)["result"];
  EXPECT_EQ(body["diff_tower"]["orders"], json({"2", "24", "40320"}));
  EXPECT_EQ(body["complete"]["limit"][0]["residue"], "7");
  EXPECT_EQ(body["ranks"].size(), 3u);
}

}  // namespace
