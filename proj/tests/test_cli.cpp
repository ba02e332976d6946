#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  json out;
};

Run run(const std::string &args) {
  const std::string cmd = std::string(HYPERLAG_CLI) + " " + args + " 2>/dev/null";
  FILE *p = popen(cmd.c_str(), "r");
  std::string text;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, p))
    text.append(buf, got);
  const int status = pclose(p);
  Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, json()};
  if (!text.empty())
    r.out = json::parse(text);
  return r;
}

std::string data(const char *name) { return std::string(HYPERLAG_DATA) + "/" + name; }

fs::path scratch(const char *name) {
  auto dir = fs::temp_directory_path() / "hyperlag_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

} // namespace

TEST(Cli, Exact12CompleteGraph) {
  auto r = run("exact12 " + data("k3_12.hg"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["command"], "exact12");
  EXPECT_TRUE(r.out["exact"].get<bool>());
  EXPECT_EQ(r.out["payload"]["value"], "5/3");
  EXPECT_EQ(r.out["payload"]["case"], "all-singletons");
  EXPECT_EQ(r.out["input_digest"].get<std::string>().size(), 64u);
}

TEST(Cli, Exact12OneHeavySingleton) {
  auto r = run("exact12 " + data("one_heavy.hg"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["payload"]["value"], "9/8");
  EXPECT_EQ(r.out["payload"]["case"], "one-heavy-singleton");
}

TEST(Cli, Turan12BipartiteIsOutOfHypothesis) {
  auto r = run("turan12 " + data("h_bipartite.hg"));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out["error"]["reason"], "H2 bipartite: Theorem hypothesis violated");
}

TEST(Cli, Turan12CompleteGraph) {
  auto r = run("turan12 " + data("k4_12.hg"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["payload"]["value"], "5/3");
}

TEST(Cli, Lubell) {
  auto r = run("lubell " + data("k4.hg"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["payload"]["value"], "1");
  r = run("lubell " + data("k4_12.hg"));
  EXPECT_EQ(r.out["payload"]["value"], "2");
}

TEST(Cli, EvalAndLagrangian) {
  auto r = run("eval " + data("k3_12.hg") + " --weights 0.25,0.25,0.5");
  ASSERT_EQ(r.code, 0);
  // 1 + 2 * (1/16 + 1/8 + 1/8)
  EXPECT_NEAR(std::stod(r.out["payload"]["value"].get<std::string>()), 1.625, 1e-9);
  EXPECT_EQ(run("eval " + data("k3_12.hg") + " --weights 1,1,1").code, 2);
  r = run("lagrangian " + data("k4.hg") + " --restarts 4 --seed 7");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(r.out["payload"]["value"].get<std::string>()), 0.75, 1e-8);
  EXPECT_TRUE(r.out["payload"]["agrees_with_exact"].get<bool>());
}

TEST(Cli, CliqueChromaticHom) {
  EXPECT_EQ(run("clique " + data("c5.hg")).out["payload"]["size"], 2);
  EXPECT_EQ(run("chromatic " + data("c5.hg")).out["payload"]["chromatic_number"], 3);
  auto r = run("hom " + data("c5.hg") + " " + data("k4.hg"));
  EXPECT_TRUE(r.out["payload"]["exists"].get<bool>());
  r = run("hom " + data("k4.hg") + " " + data("c5.hg"));
  EXPECT_FALSE(r.out["payload"]["exists"].get<bool>());
}

TEST(Cli, BlowupWritesFile) {
  auto path = scratch("blowup.hg");
  auto r = run("blowup " + data("one_heavy.hg") + " --s 2,3 -o " + path.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["payload"]["vertices"], 5);
  EXPECT_EQ(r.out["payload"]["edges"], 2 + 6);
  EXPECT_TRUE(fs::exists(path));
}

TEST(Cli, ParseErrorExitsTwo) {
  auto path = scratch("bad.hg");
  std::ofstream(path) << "n 2\ne 1 3\n";
  auto r = run("lubell " + path.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out["error"]["reason"].get<std::string>().find("line 2"), std::string::npos);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, ExtremalBudgetExitsThree) {
  auto r = run("extremal " + data("k3_12.hg") + " --n 9 --no-cache");
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.out["error"]["kind"], "resource");
}

TEST(Cli, ExtremalCacheReuse) {
  auto cache = scratch("cache.jsonl");
  fs::remove(cache);
  const std::string args = "extremal " + data("k3_12.hg") + " --n 4 --cache " + cache.string();
  auto first = run(args);
  ASSERT_EQ(first.code, 0);
  EXPECT_FALSE(first.out["payload"]["cached"].get<bool>());
  auto second = run(args);
  ASSERT_EQ(second.code, 0);
  EXPECT_TRUE(second.out["payload"]["cached"].get<bool>());
  EXPECT_EQ(first.out["payload"]["max_lubell"], second.out["payload"]["max_lubell"]);
  EXPECT_EQ(first.out["payload"]["witness"], second.out["payload"]["witness"]);
}
