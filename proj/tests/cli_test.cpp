#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

// Runs the CLI with stderr routed to a scratch file so stdout stays clean.
RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(ROADRULES_CLI_PATH) + " " + args +
                    " 2>/tmp/roadrules_cli_test.err";
  std::array<char, 4096> buffer{};
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return result;
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), n);
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = "/tmp/" + name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

TEST(CliQuery, PrintsTheWorkedExampleInOrder) {
  RunResult r = run_cli(
      "query --beliefs fog_lights_on,visibility_clear,driving,headlights_on");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output,
            "must-consideration_others\n"
            "must-drive_care_attention\n"
            "must-fog_lights_off\n"
            "must-not_drive_dangerously\n");
}

TEST(CliQuery, EmptyRuleFileYieldsNoOutputAndSucceeds) {
  std::string path = write_temp("empty.rules", "contexts standard\n");
  RunResult r = run_cli("query --rules " + path + " --context standard");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "");
}

TEST(CliQuery, JsonOutputCarriesDirectivesAndDiagnostics) {
  RunResult r = run_cli(
      "query --json --beliefs visibilityClear,warpDriveEngaged");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("\"must-fog_lights_off\""), std::string::npos);
  EXPECT_NE(r.output.find("\"warpDriveEngaged\""), std::string::npos);
}

TEST(Cli, UnknownFlagIsAUsageError) {
  RunResult r = run_cli("query --warp-speed 9");
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, UnknownSubcommandIsAUsageError) {
  RunResult r = run_cli("frobnicate");
  EXPECT_EQ(r.exit_code, 2);
}

TEST(CliCheck, ShippedCorpusIsClean) {
  RunResult r = run_cli("check");
  EXPECT_EQ(r.exit_code, 0);
}

TEST(CliCheck, ConflictingFixtureExitsOneAndNamesTheWitness) {
  std::string path = write_temp("conflict.rules",
                                "contexts standard\n"
                                "rule ra standard | a | | must stop\n"
                                "rule rb standard | b | | must not_stop\n");
  RunResult r = run_cli("check --rules " + path);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("conflict ra"), std::string::npos);
  EXPECT_NE(r.output.find("witness"), std::string::npos);
}

TEST(CliCheck, MissingFileIsALoadError) {
  RunResult r = run_cli("check --rules /nonexistent/nowhere.rules");
  EXPECT_EQ(r.exit_code, 2);
}

TEST(CliCheck, ParseErrorReportsTheLine) {
  std::string path = write_temp("bad.rules",
                                "contexts standard\n"
                                "rule r1 standard | a | | shall x\n");
  RunResult r = run_cli("check --rules " + path);
  EXPECT_EQ(r.exit_code, 2);
  std::ifstream err("/tmp/roadrules_cli_test.err");
  std::string text((std::istreambuf_iterator<char>(err)),
                   std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("line 2"), std::string::npos);
}

TEST(CliTest, ReactivePassesAndExitsZero) {
  RunResult r = run_cli("test --agent reactive --seed 42");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("overall"), std::string::npos);
  EXPECT_NE(r.output.find("verdict overall=pass"), std::string::npos);
}

TEST(CliTest, BankruptFailsCitingBothShouldViolations) {
  RunResult r = run_cli("test --agent morally_bankrupt --seed 42");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("verdict overall=fail"), std::string::npos);
  EXPECT_NE(r.output.find("return_to_left_lane"), std::string::npos);
  EXPECT_NE(r.output.find("give_way_oncoming"), std::string::npos);
}

TEST(CliTest, UnknownAgentIsAUsageError) {
  RunResult r = run_cli("test --agent chaotic_neutral");
  EXPECT_EQ(r.exit_code, 2);
}

TEST(CliRun, UnknownScenarioIsAUsageError) {
  RunResult r = run_cli("run --scenario roundabout");
  EXPECT_EQ(r.exit_code, 2);
}

TEST(CliRun, WritesByteIdenticalTracesAcrossRuns) {
  RunResult a = run_cli(
      "run --scenario overtake --agent reactive --seed 42 --trace "
      "/tmp/cli_a.trace");
  RunResult b = run_cli(
      "run --scenario overtake --agent reactive --seed 42 --trace "
      "/tmp/cli_b.trace");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(b.exit_code, 0);
  std::ifstream fa("/tmp/cli_a.trace", std::ios::binary);
  std::ifstream fb("/tmp/cli_b.trace", std::ios::binary);
  std::string ta((std::istreambuf_iterator<char>(fa)),
                 std::istreambuf_iterator<char>());
  std::string tb((std::istreambuf_iterator<char>(fb)),
                 std::istreambuf_iterator<char>());
  EXPECT_FALSE(ta.empty());
  EXPECT_EQ(ta, tb);
}

TEST(CliRun, MatchesTheFrozenGoldenTrace) {
  RunResult r = run_cli("run --scenario overtake --agent reactive --seed 42");
  EXPECT_EQ(r.exit_code, 0);
  std::ifstream golden(std::string(ROADRULES_SOURCE_DIR) +
                           "/tests/golden/reactive_overtake_42.trace",
                       std::ios::binary);
  ASSERT_TRUE(golden.is_open());
  std::string want((std::istreambuf_iterator<char>(golden)),
                   std::istreambuf_iterator<char>());
  EXPECT_EQ(r.output, want);
}

TEST(Cli, SearchPathEnvironmentVariableResolvesRuleFiles) {
  system("mkdir -p /tmp/roadrules_search && printf 'contexts standard\\n"
         "rule r1 standard | a | | must stop\\n' "
         "> /tmp/roadrules_search/mini.rules");
  std::string cmd = "ROADRULES_PATH=/tmp/roadrules_search " +
                    std::string(ROADRULES_CLI_PATH) +
                    " query --rules mini.rules --beliefs a 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::array<char, 256> buffer{};
  std::string output;
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    output.append(buffer.data(), n);
  }
  int status = pclose(pipe);
  EXPECT_EQ(WEXITSTATUS(status), 0);
  EXPECT_EQ(output, "must-stop\n");
}

TEST(CliBench, SingleIterationReportsOneSample) {
  RunResult r = run_cli("bench --iterations 1 --json");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("\"iterations\":1"), std::string::npos);
  EXPECT_NE(r.output.find("min_us"), std::string::npos);
}

TEST(CliBench, RunsAgainstAnEmptyCorpus) {
  std::string path = write_temp("empty2.rules", "contexts standard\n");
  RunResult r = run_cli("bench --iterations 100 --rules " + path);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("median_us"), std::string::npos);
}

}  // namespace
