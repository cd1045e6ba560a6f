#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"
#include "psched/io.hpp"

namespace psched {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args, const Solvers& solvers = {}) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err, solvers);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("psched_cli_test_" + name)).string();
}

TEST(Cli, GenIsDeterministic) {
  const std::vector<std::string> args = {"gen",   "--jobs",  "5", "--density", "1/2", "--seed",
                                         "42",    "--max-p", "10", "--max-w",  "5"};
  const CliRun a = run(args);
  const CliRun b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(parse_instance(a.out).job_count(), 5u);
}

TEST(Cli, GenDensityZeroHasNoEdges) {
  const CliRun r = run({"gen", "--jobs", "6", "--density", "0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(parse_instance(r.out).precedences().empty());
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"gen", "--jobs", "0"}).code, 2);
  EXPECT_EQ(run({"gen", "--density", "3/2"}).code, 2);
  EXPECT_EQ(run({"gen", "-j", "3"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"solve"}).code, 2);
  EXPECT_EQ(run({"solve", "--input", testing::data_path("round_robin.json"), "--mode", "fast"}).code, 2);
  EXPECT_EQ(run({"solve", "--input", "/nonexistent.json"}).code, 2);
}

TEST(Cli, ParseErrorExitsTwo) {
  const std::string path = temp_path("bad.json");
  write_file(path, R"({"machines": 1, "jobs": [{"p": -1, "w": 1}], "precedences": []})");
  const CliRun r = run({"solve", "--input", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("jobs[0].p"), std::string::npos);
}

TEST(Cli, SolveSingleExample) {
  const CliRun r = run({"solve", "--input", testing::data_path("round_robin.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"objective\": \"59\""), std::string::npos);
}

TEST(Cli, SolveSingleRejectsManyMachines) {
  EXPECT_EQ(run({"solve", "--input", testing::data_path("three_machines.json")}).code, 2);
}

TEST(Cli, SolveParallelWritesArtifacts) {
  const std::string out = temp_path("sched.json");
  const std::string virt = temp_path("virtual.json");
  const std::string dot = temp_path("net.dot");
  const std::string gantt = temp_path("gantt.csv");
  const CliRun r = run({"solve", "--input", testing::data_path("three_machines.json"), "--mode", "parallel", "--output",
                     out, "--emit-virtual", virt, "--emit-dot", dot, "--gantt", gantt});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(read_file(out).find("\"21\""), std::string::npos);
  EXPECT_NE(read_file(virt).find("completion_order"), std::string::npos);
  EXPECT_NE(read_file(dot).find("\"A\" -> \"B\" [label=\"3 | 3\"];"), std::string::npos);
  EXPECT_EQ(read_file(gantt).rfind("machine,job,start,end\n1,0,0,9\n", 0), 0u);
}

TEST(Cli, SolveSingleJobHasOneSegment) {
  const CliRun r = run({"solve", "--input", testing::data_path("single_job.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("\"machine\"", r.out.find("\"machine\"") + 1), std::string::npos);
}

TEST(Cli, RatesShowsPrice) {
  const CliRun r = run({"rates", "--input", testing::data_path("three_machines.json"), "--mode", "parallel"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"price\": \"9/2\""), std::string::npos);
  EXPECT_NE(r.out.find("\"2/3\""), std::string::npos);
}

TEST(Cli, VerifyExample) {
  const CliRun r = run({"verify", "--input", testing::data_path("round_robin.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"ratio\": \"59/56\""), std::string::npos);
}

TEST(Cli, VerifyParallelExample) {
  EXPECT_EQ(run({"verify", "--input", testing::data_path("three_machines.json"), "--mode", "parallel"}).code, 0);
}

TEST(Cli, VerifySweep) {
  const CliRun r = run({"verify", "--count", "1000", "--max-jobs", "9", "--machines", "1", "--seed", "7"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"violations\": 0"), std::string::npos);
}

TEST(Cli, VerifyPlantedViolationExitsOne) {
  Solvers stub;
  stub.single = [](const Instance& inst) {
    SingleMachineResult res = solve_single(inst);
    std::vector<JobId> reversed = inst.topological_order();
    std::reverse(reversed.begin(), reversed.end());
    res.schedule = list_schedule(inst, reversed);
    return res;
  };
  const std::string path = temp_path("planted.json");
  // Smith order is 0,1,2; running it backwards costs more than twice OPT.
  write_file(path, R"({"machines": 1, "jobs": [{"p": 1, "w": 100}, {"p": 1, "w": 10}, {"p": 100, "w": 1}],
                       "precedences": []})");
  EXPECT_EQ(run({"verify", "--input", path}).code, 0);
  EXPECT_EQ(run({"verify", "--input", path}, stub).code, 1);
}

TEST(Cli, VerifyRefusesOverCap) {
  const CliRun gen = run({"gen", "--jobs", "12", "--seed", "1"});
  const std::string path = temp_path("big.json");
  write_file(path, gen.out);
  const CliRun r = run({"verify", "--input", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("cap"), std::string::npos);
  EXPECT_EQ(run({"verify", "--input", path, "--oracle-cap", "12"}).code, 0);
  EXPECT_EQ(run({"verify", "--count", "3", "--max-jobs", "11"}).code, 2);
}

TEST(CliBinary, ExitCodes) {
  const std::string bin = PSCHED_CLI_BINARY;
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("verify --input " + testing::data_path("round_robin.json")), 0);
  EXPECT_EQ(status("gen --jobs 0"), 2);
  EXPECT_EQ(status("gen --jobs 3 --seed 1"), 0);
}

}  // namespace
}  // namespace psched
