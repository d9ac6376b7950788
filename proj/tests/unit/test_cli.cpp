#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace speeduplab::cli {
namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;

  Json json() const { return Json::parse(out); }
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("speeduplab_" + name);
  std::ofstream(path) << content;
  return path.string();
}

TEST(Cli, SubAnalyzeEx431) {
  const CliRun r = run_cli({"sub", "analyze", "--config", "ex431", "--no-meta"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["command"], "sub analyze");
  EXPECT_EQ(j["system"], "ex431");
  EXPECT_EQ(j["verdict"], "MINIMAL");
  EXPECT_EQ(j["orbit_number"]["reachability"], 2);
  EXPECT_FALSE(j.contains("meta"));
}

TEST(Cli, DeterministicWithoutMeta) {
  const CliRun a = run_cli({"sub", "sigma", "--config", "ex44", "--no-meta"});
  const CliRun b = run_cli({"sub", "sigma", "--config", "ex44", "--no-meta"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const CliRun c = run_cli({"sub", "sigma", "--config", "ex44"});
  EXPECT_TRUE(c.json().contains("meta"));
}

TEST(Cli, OdometerCommands) {
  EXPECT_EQ(run_cli({"odo", "check", "--config", "remex", "--no-meta"}).json()["verdict"],
            "MINIMAL(c=2)");
  EXPECT_EQ(run_cli({"odo", "tower", "--config", "remex", "--no-meta"}).json()["verdict"],
            "CYCLIC_FOREVER");
  EXPECT_EQ(run_cli({"odo", "verify-sameodom", "--config", "remex", "--no-meta"}).json()["verdict"],
            "PASS");
  const CliRun u = run_cli({"odo", "construct", "--universal", "--c", "6", "--no-meta"});
  ASSERT_EQ(u.code, kExitOk) << u.err;
  EXPECT_EQ(u.json()["verdict"], "IMPOSSIBLE");
  EXPECT_EQ(u.json()["prime"], 2);
  const CliRun c = run_cli({"odo", "construct", "--config", "remex", "--c", "2", "--no-meta"});
  ASSERT_EQ(c.code, kExitOk) << c.err;
  EXPECT_EQ(c.json()["verdict"], "CONSTRUCTED");
}

TEST(Cli, CoboundExitCodes) {
  const CliRun d = run_cli({"cobound", "--config", "ex44", "--side", "S", "--no-meta"});
  ASSERT_EQ(d.code, kExitOk) << d.err;
  EXPECT_EQ(d.json()["verdict"], "DIVERGENT");
  const CliRun i = run_cli({"cobound", "--config", "ex44", "--side", "S", "--horizon", "20", "--no-meta"});
  EXPECT_EQ(i.code, kExitInconclusive);
  EXPECT_EQ(i.json()["verdict"], "INCONCLUSIVE");
  const CliRun t = run_cli({"cobound", "--config", "ex431", "--side", "T", "--no-meta"});
  EXPECT_EQ(t.json()["verdict"], "BOUNDED");
}

TEST(Cli, TraceCsv) {
  const auto path = std::filesystem::temp_directory_path() / "speeduplab_trace.csv";
  const CliRun r = run_cli({"cobound", "--config", "remex", "--side", "S", "--horizon", "50",
                         "--trace-csv", path.string(), "--no-meta"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "n,sum");
}

TEST(Cli, TextFormat) {
  const CliRun r = run_cli({"odo", "check", "--config", "remex", "--no-meta", "--format", "text"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("verdict: MINIMAL(c=2)"), std::string::npos);
}

TEST(Cli, Errors) {
  const CliRun missing = run_cli({"sub", "analyze", "--config", "/nonexistent/file.json"});
  EXPECT_EQ(missing.code, kExitError);
  EXPECT_NE(missing.err.find("error:"), std::string::npos);

  const CliRun bad_json = run_cli({"sub", "analyze", "--config", temp_file("bad.json", "{not json")});
  EXPECT_EQ(bad_json.code, kExitError);

  const CliRun bad_field = run_cli(
      {"sub", "analyze", "--config",
       temp_file("field.json",
                 R"({"name": "x", "kind": "substitution", "substitution": {"alphabet": 2, "images": {"0": [0]}}})")});
  EXPECT_EQ(bad_field.code, kExitError);
  EXPECT_NE(bad_field.err.find("substitution.images"), std::string::npos);

  EXPECT_EQ(run_cli({"sub", "frobnicate"}).code, kExitError);
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);

  const CliRun horizon = run_cli({"sub", "analyze", "--config", "ex431", "--max-prefix", "8"});
  EXPECT_EQ(horizon.code, kExitError);
  EXPECT_NE(horizon.err.find("--max-prefix"), std::string::npos);
}

TEST(Cli, ExammeasAndEntropy) {
  const CliRun e = run_cli({"exammeas", "--config", "exammeas", "--no-meta"});
  ASSERT_EQ(e.code, kExitOk) << e.err;
  EXPECT_EQ(e.json()["verdict"], "CONSISTENT");
  const CliRun h = run_cli({"entropy", "--config", "ex44", "--n", "10", "--no-meta"});
  ASSERT_EQ(h.code, kExitOk) << h.err;
  EXPECT_EQ(h.json()["n"], 10);
}

TEST(Cli, ReproducePaper) {
  const CliRun r = run_cli({"reproduce-paper", "--no-meta"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const CliRun s = run_cli({"reproduce-paper", "--horizon", "20", "--no-meta"});
  EXPECT_EQ(s.code, kExitInconclusive);
}

}  // namespace
}  // namespace speeduplab::cli
