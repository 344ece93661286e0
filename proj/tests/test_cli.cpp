// End-to-end tests of the command line tool: exit codes, report files,
// and byte-level determinism of repeated runs.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string g_cli_path;

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "admlie_cli_tests";
  fs::create_directories(dir);
  return dir;
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout.txt";
  const std::string cmd = "'" + g_cli_path + "' " + args + " > '" + out.string() + "' 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  result.output = ss.str();
  return result;
}

std::string strip_timing(const std::string& text) {
  std::stringstream in(text), out;
  std::string line;
  while (std::getline(in, line))
    if (line.find("\"timing_ms\"") == std::string::npos) out << line << "\n";
  return out.str();
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

}  // namespace

TEST(Cli, CatalogPasses) {
  const auto r = run_cli("catalog 'jacobi(1)'");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("\"pipeline\": \"catalog\""), std::string::npos);
}

TEST(Cli, BuildOnCatalogInput) {
  const auto r = run_cli("build --input catalog:oscillator");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("\"solvable\": true"), std::string::npos);
}

TEST(Cli, ParseErrorExitCode) {
  const fs::path bad = scratch_dir() / "bad.json";
  write_file(bad, "{ not json");
  EXPECT_EQ(run_cli("build --input '" + bad.string() + "'").exit_code, 3);
  const fs::path unknown = scratch_dir() / "unknown_field.json";
  write_file(unknown, R"({"algebra": {"dim": 1}, "surprise": true})");
  EXPECT_EQ(run_cli("build --input '" + unknown.string() + "'").exit_code, 3);
}

TEST(Cli, ValidationErrorExitCode) {
  const fs::path bad = scratch_dir() / "nonlie.json";
  write_file(bad, R"({"algebra": {"dim": 3, "structure": [
    {"i": 0, "j": 1, "k": 2, "c": "1"},
    {"i": 0, "j": 2, "k": 0, "c": "1"}
  ]}})");
  EXPECT_EQ(run_cli("build --input '" + bad.string() + "'").exit_code, 2);
}

TEST(Cli, VerdictFailureExitCode) {
  // The conformal direction is a genuine derivation but induces no
  // 3-grading, so classify reports a failed check.
  const fs::path d = scratch_dir() / "conformal.json";
  write_file(d, R"({"matrix": [
    ["1","0","0","0","0","0"],
    ["0","1","0","0","0","0"],
    ["0","0","2","0","0","0"],
    ["0","0","0","0","0","0"],
    ["0","0","0","0","0","0"],
    ["0","0","0","0","0","0"]]})");
  const auto r = run_cli("classify --input 'catalog:jacobi(1)' --derivation '" + d.string() + "'");
  EXPECT_EQ(r.exit_code, 1) << r.output;
}

TEST(Cli, ReportFileWritten) {
  const fs::path report = scratch_dir() / "report.json";
  const auto r = run_cli("cone-span --input 'catalog:jacobi(1)' --report '" + report.string() + "'");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  std::ifstream in(report);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), r.output);
}

TEST(Cli, DeterministicReports) {
  const char* commands[] = {
      "catalog 'jacobi(1)'",
      "build --input catalog:generalized_jacobi_ex318",
      "derivations --input 'catalog:heis(1)'",
      "classify --input 'catalog:ex319(1)'",
      "cone-span --input 'catalog:jacobi(1)'",
      "no-go --input catalog:oscillator",
  };
  for (const char* cmd : commands) {
    const auto first = run_cli(cmd);
    const auto second = run_cli(cmd);
    EXPECT_EQ(first.exit_code, 0) << cmd << "\n" << first.output;
    EXPECT_EQ(strip_timing(first.output), strip_timing(second.output)) << cmd;
  }
}

TEST(Cli, FunctionalFlag) {
  const auto r = run_cli("cone-span --input 'catalog:jacobi(1)' --functional 3");
  EXPECT_EQ(r.exit_code, 0) << r.output;
}

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  if (argc > 1) g_cli_path = argv[1];
  if (g_cli_path.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-admlie-binary>\n");
    return 2;
  }
  return RUN_ALL_TESTS();
}
