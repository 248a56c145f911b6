// Copyright 2026 The ViSTA Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "support.hpp"

#include "vista/app.hpp"
#include "vista/synth.hpp"
#include "vista/writer.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace vista
{
namespace
{

namespace fs = std::filesystem;

struct Invocation
{
  int exit_code{-1};
  std::string output;
};

/// Runs the command-line binary with stderr folded into the captured output.
Invocation run_cli(const std::string & args, const std::string & env = {})
{
  const std::string command = env + " " + VISTA_CLI_PATH + " " + args + " 2>&1";
  Invocation out;
  FILE * pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) {
    return out;
  }
  char buffer[4096];
  while (const std::size_t n = std::fread(buffer, 1, sizeof(buffer), pipe)) {
    out.output.append(buffer, n);
  }
  const int status = ::pclose(pipe);
  out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string slurp(const fs::path & p)
{
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_run(const Trace & t, const fs::path & dir, LayoutKind kind = LayoutKind::flat)
{
  const FileLayout layout = make_layout(kind, dir, t.testcase_id, t.run_id);
  write_trace(t, layout);
  return layout.root;
}

Trace worked_run(synth::Case c, int run_id = 1)
{
  return synth::synthesize(synth::ScenarioSpec{}, c, run_id);
}

// ---------------------------------------------------------------- validate

TEST(Validate, CleanRunSucceeds)
{
  const test::TempDir dir("cli");
  app::Options options;
  options.out = dir.path() / "out";
  std::ostringstream out;
  std::ostringstream err;
  const fs::path run = write_run(worked_run(synth::Case::case3), dir.path());
  EXPECT_EQ(app::cmd_validate({run}, options, out, err), app::kSuccess) << out.str() << err.str();
  EXPECT_TRUE(fs::exists(options.out / "M2-CL4-S-TST-05-01_r01.integrity.json"));
  EXPECT_TRUE(fs::exists(options.out / "M2-CL4-S-TST-05-01_r01.integrity.txt"));
  EXPECT_TRUE(fs::exists(options.out / "M2-CL4-S-TST-05-01.runs.json"));
}

TEST(Validate, NonMonotoneTimeFails)
{
  const test::TempDir dir("cli");
  Trace t = worked_run(synth::Case::case3);
  t.vut[5].time = t.vut[3].time;
  app::Options options;
  options.out = dir.path() / "out";
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(app::cmd_validate({write_run(t, dir.path())}, options, out, err), app::kFailure);
  EXPECT_NE(out.str().find("NonMonotoneTime"), std::string::npos) << out.str();
}

TEST(Validate, MissingInputIsAnOperationalError)
{
  const test::TempDir dir("cli");
  app::Options options;
  options.out = dir.path() / "out";
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(app::cmd_validate({dir.path() / "results_TC_r01.csv"}, options, out, err), app::kOperationalError);
}

TEST(Validate, RunCountIsCheckedPerTestCase)
{
  const test::TempDir dir("cli");
  synth::ScenarioSpec spec;
  spec.runs = 3;
  for (const auto & t : synth::synthesize_runs(spec, synth::Case::case3)) {
    write_run(t, dir.path() / "runs");
  }
  app::Options options;
  options.out = dir.path() / "out";
  options.n_required = 4;
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(app::cmd_validate({dir.path() / "runs"}, options, out, err), app::kFailure);
  EXPECT_NE(slurp(options.out / "M2-CL4-S-TST-05-01.runs.json").find("InsufficientRuns"), std::string::npos);
  options.n_required = 3;
  EXPECT_EQ(app::cmd_validate({dir.path() / "runs"}, options, out, err), app::kSuccess);
}

// ---------------------------------------------------------------- evaluate

TEST(Evaluate, PassingAndFailingCases)
{
  const test::TempDir dir("cli");
  app::Options options;
  options.out = dir.path() / "out";
  std::ostringstream out;
  std::ostringstream err;
  const fs::path pass = write_run(worked_run(synth::Case::case3), dir.path() / "pass");
  const fs::path fail = write_run(worked_run(synth::Case::case1), dir.path() / "fail");
  EXPECT_EQ(app::cmd_evaluate({pass}, options, out, err), app::kSuccess) << err.str();
  for (const char * suffix : {".evaluation.json", ".evaluation.txt", ".clearance.csv", ".kinematics.csv", ".trajectory.csv"}) {
    EXPECT_TRUE(fs::exists(options.out / ("M2-CL4-S-TST-05-01_r01" + std::string(suffix)))) << suffix;
  }
  EXPECT_TRUE(fs::exists(options.out / "M2-CL4-S-TST-05-01.summary.json"));
  EXPECT_EQ(app::cmd_evaluate({fail}, options, out, err), app::kFailure);
}

TEST(Evaluate, ParallelJobsGiveIdenticalReports)
{
  const test::TempDir dir("cli");
  synth::ScenarioSpec spec;
  spec.runs = 6;
  for (const auto & t : synth::synthesize_runs(spec, synth::Case::case2)) {
    write_run(t, dir.path() / "runs");
  }
  std::ostringstream out;
  std::ostringstream err;
  app::Options serial;
  serial.out = dir.path() / "serial";
  app::Options parallel = serial;
  parallel.out = dir.path() / "parallel";
  parallel.jobs = 4;
  EXPECT_EQ(app::cmd_evaluate({dir.path() / "runs"}, serial, out, err), app::kFailure);
  EXPECT_EQ(app::cmd_evaluate({dir.path() / "runs"}, parallel, out, err), app::kFailure);
  for (const auto & entry : fs::directory_iterator(serial.out)) {
    EXPECT_EQ(slurp(entry.path()), slurp(parallel.out / entry.path().filename())) << entry.path();
  }
}

TEST(Evaluate, RuleOverridesChangeTheVerdict)
{
  const test::TempDir dir("cli");
  const fs::path run = write_run(worked_run(synth::Case::case2), dir.path());
  std::ofstream(dir.path() / "rules.json") << R"({"default": {"lateral": {"stopped_or_parked_vehicle": 0.5}}})";
  app::Options options;
  options.out = dir.path() / "out";
  options.rules = dir.path() / "rules.json";
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(app::cmd_evaluate({run}, options, out, err), app::kSuccess) << out.str() << err.str();
}

TEST(Evaluate, EmptyOrBrokenInputIsAnOperationalError)
{
  const test::TempDir dir("cli");
  app::Options options;
  options.out = dir.path() / "out";
  std::ostringstream out;
  std::ostringstream err;
  std::ofstream(dir.path() / "results_TC_r01.csv") << "";
  EXPECT_EQ(app::cmd_evaluate({dir.path() / "results_TC_r01.csv"}, options, out, err), app::kOperationalError);
  EXPECT_EQ(app::cmd_evaluate({}, options, out, err), app::kOperationalError);
}

// ---------------------------------------------------------------- fidelity

TEST(FidelityCommand, IdenticalPassesAndDisjointIsAnError)
{
  const test::TempDir dir("cli");
  const Trace t = worked_run(synth::Case::case3);
  const fs::path a = write_run(t, dir.path() / "a");
  Trace late = t;
  late.vut.erase(late.vut.begin(), late.vut.begin() + static_cast<std::ptrdiff_t>(late.vut.size() - 25));
  late.actors.clear();
  const fs::path b = write_run(late, dir.path() / "b");
  app::Options options;
  options.out = dir.path() / "out";
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(app::cmd_fidelity(a, a, std::nullopt, options, out, err), app::kSuccess) << err.str();
  EXPECT_TRUE(fs::exists(options.out / "fidelity.json"));
  EXPECT_EQ(app::cmd_fidelity(a, b, std::nullopt, options, out, err), app::kOperationalError);
}

// ---------------------------------------------------------------- generate

TEST(Generate, WritesConventionallyNamedRuns)
{
  const test::TempDir dir("cli");
  app::Options options;
  options.out = dir.path();
  options.layout = LayoutKind::flat;
  std::ostringstream out;
  std::ostringstream err;
  app::GenerateRequest request;
  request.scenario_case = synth::Case::case1;
  EXPECT_EQ(app::cmd_generate(request, options, out, err), app::kSuccess) << err.str();
  for (int r = 1; r <= 10; ++r) {
    char name[64];
    std::snprintf(name, sizeof(name), "results_M2-CL4-S-TST-05-01_r%02d.csv", r);
    EXPECT_TRUE(fs::is_regular_file(dir.path() / name)) << name;
  }
}

TEST(Generate, DistributedSingleRun)
{
  const test::TempDir dir("cli");
  app::Options options;
  options.out = dir.path();
  options.layout = LayoutKind::distributed;
  std::ostringstream out;
  std::ostringstream err;
  app::GenerateRequest request;
  request.runs = 1;
  EXPECT_EQ(app::cmd_generate(request, options, out, err), app::kSuccess) << err.str();
  const auto entries = std::distance(fs::directory_iterator(dir.path()), fs::directory_iterator{});
  EXPECT_EQ(entries, 1);
  EXPECT_TRUE(fs::exists(dir.path() / "M2-CL4-S-TST-05-01_r01" / "VUT_status.csv"));
}

TEST(Generate, InfeasibleRequestIsAnOperationalError)
{
  const test::TempDir dir("cli");
  app::Options options;
  options.out = dir.path();
  std::ostringstream out;
  std::ostringstream err;
  app::GenerateRequest request;
  request.target = 6.0;
  EXPECT_EQ(app::cmd_generate(request, options, out, err), app::kOperationalError);
  EXPECT_NE(err.str().find("InfeasibleSpec"), std::string::npos) << err.str();
}

TEST(Generate, ScenarioSpecParsing)
{
  const auto spec = app::parse_scenario_spec(R"({"testcase_id": "TC-9", "runs": 2, "tsv_station": 120})");
  EXPECT_EQ(spec.testcase_id, "TC-9");
  EXPECT_EQ(spec.runs, 2);
  EXPECT_EQ(spec.tsv_station, 120.0);
  EXPECT_THROW(app::parse_scenario_spec(R"({"tsv_stations": 1})"), std::exception);
}

// ---------------------------------------------------------------- binary

TEST(Binary, ExitCodesEndToEnd)
{
  const test::TempDir dir("cli");
  const std::string out = (dir.path() / "gen").string();
  const auto gen = run_cli("generate --case case3 --runs 2 --out " + out);
  ASSERT_EQ(gen.exit_code, 0) << gen.output;
  const auto eval = run_cli("evaluate " + out + " --out " + (dir.path() / "eval").string());
  EXPECT_EQ(eval.exit_code, 0) << eval.output;
  const auto gen_fail = run_cli("generate --case case1 --runs 1 --out " + (dir.path() / "bad").string());
  ASSERT_EQ(gen_fail.exit_code, 0) << gen_fail.output;
  EXPECT_EQ(run_cli("evaluate " + (dir.path() / "bad").string() + " --out " + (dir.path() / "eval2").string()).exit_code, 1);
  EXPECT_EQ(run_cli("validate " + (dir.path() / "nothing.csv").string() + " --out " + (dir.path() / "v").string()).exit_code, 2);
  EXPECT_EQ(run_cli("evaluate --no-such-flag --out " + (dir.path() / "x").string()).exit_code, 2);
  EXPECT_EQ(run_cli("--help").exit_code, 0);
}

TEST(Binary, EnvironmentMirrorsFlags)
{
  const test::TempDir dir("cli");
  const auto gen = run_cli("generate --case case3 --runs 3", "VISTA_OUT=" + dir.path().string());
  ASSERT_EQ(gen.exit_code, 0) << gen.output;
  EXPECT_TRUE(fs::exists(dir.path() / "results_M2-CL4-S-TST-05-01_r03.csv"));
  const auto strict = run_cli(
    "validate " + dir.path().string() + " --out " + (dir.path() / "v").string(), "VISTA_N_REQUIRED=10");
  EXPECT_EQ(strict.exit_code, 1) << strict.output;
}

TEST(Binary, SchemaMatchesTheShippedDocument)
{
  const auto schema = run_cli("schema");
  ASSERT_EQ(schema.exit_code, 0);
  EXPECT_EQ(schema.output, slurp(fs::path(VISTA_SOURCE_DIR) / "schema" / "vista_columns.json"));
}

}  // namespace
}  // namespace vista
