#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "test_support.hpp"

#ifndef RDISC_CLI_PATH
#error "RDISC_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string command = std::string(RDISC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(command.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  std::string output;
  char buffer[4096];
  while (std::size_t got = ::fread(buffer, 1, sizeof buffer, pipe))
    output.append(buffer, got);
  int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

TEST(Cli, DdiscPrintsPublishedExpansion) {
  auto result = run_cli("ddisc --n 3 --k 1 --format text");
  EXPECT_EQ(result.exit_code, 0);
  rdisc::Polynomial expected = fixtures::tilde_d3(1);
  EXPECT_EQ(result.output, rdisc::to_canonical_string(expected) + "\n");
}

TEST(Cli, LettersFlagRenamesVariables) {
  auto result = run_cli("tk --n 4 --k 4 --letters");
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_EQ(result.output,
            "27*a^3*c - 9*a^2*b^2 - 108*a*b*c + 32*b^3 + 108*c^2\n");
}

TEST(Cli, VerifyTheoremQuarticPasses) {
  auto result = run_cli("verify-theorem --n 4 --k all --format json");
  EXPECT_EQ(result.exit_code, 0);
  // Four JSON reports; each validates against the schema.
  int reports = 0;
  std::size_t pos = 0;
  while (pos < result.output.size()) {
    std::size_t next = result.output.find("\n{", pos);
    std::string chunk = next == std::string::npos
                            ? result.output.substr(pos)
                            : result.output.substr(pos, next + 1 - pos);
    auto j = rdisc::Json::parse(chunk);
    std::string reason;
    EXPECT_TRUE(rdisc::validate_theorem_report_json(j, &reason)) << reason;
    ++reports;
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  EXPECT_EQ(reports, 4);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli("verify-theorem --n 2 --k 1").exit_code, 2);
  EXPECT_EQ(run_cli("verify-theorem --n 9 --k 1").exit_code, 2);
  EXPECT_EQ(run_cli("ddisc --n 4 --k 7").exit_code, 2);
  EXPECT_EQ(run_cli("ddisc --n 4 --k frog").exit_code, 2);
  EXPECT_EQ(run_cli("nonsense --n 4").exit_code, 2);
  EXPECT_EQ(run_cli("ddisc").exit_code, 2);
}

TEST(Cli, OutputIsByteDeterministic) {
  auto first = run_cli("discriminant --n 5");
  auto second = run_cli("discriminant --n 5");
  EXPECT_EQ(first.exit_code, 0);
  EXPECT_EQ(first.output, second.output);
  auto third = run_cli("tk --n 5 --k all --letters");
  auto fourth = run_cli("tk --n 5 --k all --letters");
  EXPECT_EQ(third.output, fourth.output);
}

TEST(Cli, CacheHitProducesIdenticalBytes) {
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() /
      ("rdisc_cli_cache_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::string args = "ddisc --n 4 --k 1 --cache-dir " + dir.string();
  auto cold = run_cli(args);
  EXPECT_EQ(cold.exit_code, 0);
  EXPECT_FALSE(std::filesystem::is_empty(dir));
  auto warm = run_cli(args);
  EXPECT_EQ(warm.exit_code, 0);
  EXPECT_EQ(cold.output, warm.output);
  // Corrupting the cached entry forces a recompute with the same output.
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::ofstream out(entry.path(), std::ios::trunc);
    out << "junk\n";
  }
  auto repaired = run_cli(args);
  EXPECT_EQ(repaired.exit_code, 0);
  EXPECT_EQ(repaired.output, cold.output);
  std::filesystem::remove_all(dir);
}

TEST(Cli, VerifyLemmasAndQhd) {
  EXPECT_EQ(run_cli("verify-lemmas --n 3").exit_code, 0);
  EXPECT_EQ(run_cli("verify-qhd --n 4").exit_code, 0);
  // n=8 would need a degree-9 family for the restriction step.
  EXPECT_EQ(run_cli("verify-lemmas --n 8").exit_code, 2);
}

TEST(Cli, SeedChangesNothingMathematical) {
  auto a = run_cli("verify-theorem --n 3 --k 1 --seed 1 --format text");
  auto b = run_cli("verify-theorem --n 3 --k 1 --seed 999 --format text");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(b.exit_code, 0);
}

}  // namespace
