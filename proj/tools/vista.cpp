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

// Command-line front end. Every option is mirrored by a VISTA_* environment
// variable; an explicit flag wins over the environment.

#include "vista/app.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>

namespace
{

using vista::app::Options;

void add_common(CLI::App & cmd, Options & options, std::string & layout, std::string & axis_order)
{
  cmd.add_option("--layout", layout, "Input or output layout")
    ->check(CLI::IsMember({"auto", "flat", "distributed"}))
    ->envname("VISTA_LAYOUT");
  cmd.add_option("--out", options.out, "Output directory")->envname("VISTA_OUT");
  cmd.add_option("--jobs", options.jobs, "Worker threads")->check(CLI::PositiveNumber)->envname("VISTA_JOBS");
  cmd.add_option("--f-min", options.f_min, "Minimum logging rate in Hz")
    ->check(CLI::PositiveNumber)
    ->envname("VISTA_F_MIN");
  cmd.add_option("--axis-order", axis_order, "Component order inside position arrays")
    ->check(CLI::IsMember({"lat_lon", "lon_lat"}))
    ->envname("VISTA_AXIS_ORDER");
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App cli{"ViSTA trace toolkit: validate, evaluate, compare and generate virtual test runs"};
  cli.require_subcommand(1);
  cli.set_version_flag("--version", "vista 1.0.0");

  Options options;
  std::string layout = "auto";
  std::string axis_order = "lat_lon";
  std::vector<std::filesystem::path> inputs;
  std::uint64_t seed = 0;
  std::string case_name = "case3";
  int runs = 0;
  double target = 0.0;
  double offset = 0.0;
  std::filesystem::path spec_file;
  std::filesystem::path virtual_path;
  std::filesystem::path reference_path;

  auto * validate = cli.add_subcommand("validate", "Check format and integrity of runs");
  add_common(*validate, options, layout, axis_order);
  validate->add_option("--n-required", options.n_required, "Runs required per test case")
    ->check(CLI::PositiveNumber)
    ->envname("VISTA_N_REQUIRED");
  validate->add_option("inputs", inputs, "Run files, run folders, or directories of runs")->required();

  auto * evaluate = cli.add_subcommand("evaluate", "Apply the clearance and kinematic rules");
  add_common(*evaluate, options, layout, axis_order);
  evaluate->add_option("--rules", options.rules, "Rule override file (JSON)")->envname("VISTA_RULES");
  evaluate->add_option("--n-required", options.n_required, "Runs required per test case")
    ->check(CLI::PositiveNumber)
    ->envname("VISTA_N_REQUIRED");
  evaluate->add_option("inputs", inputs, "Run files, run folders, or directories of runs")->required();

  auto * report = cli.add_subcommand("report", "Export plot-ready clearance, speed and trajectory series");
  add_common(*report, options, layout, axis_order);
  report->add_option("inputs", inputs, "Run files, run folders, or directories of runs")->required();

  auto * fidelity = cli.add_subcommand("fidelity", "Compare a virtual run against a reference run");
  add_common(*fidelity, options, layout, axis_order);
  fidelity->add_option("--tolerances", options.tolerances, "Tolerance file (JSON)")->envname("VISTA_TOLERANCES");
  auto * offset_opt = fidelity->add_option("--offset", offset, "Fixed time offset in seconds; skips alignment")
                        ->envname("VISTA_OFFSET");
  fidelity->add_option("virtual", virtual_path, "Virtual run")->required();
  fidelity->add_option("reference", reference_path, "Reference run")->required();

  auto * generate = cli.add_subcommand("generate", "Synthesize the overtaking scenario run set");
  add_common(*generate, options, layout, axis_order);
  generate->add_option("--case", case_name, "Scenario case")
    ->check(CLI::IsMember({"case1", "case2", "case3"}))
    ->envname("VISTA_CASE");
  auto * runs_opt = generate->add_option("--runs", runs, "Number of runs")->check(CLI::Range(1, 999))->envname("VISTA_RUNS");
  auto * target_opt =
    generate->add_option("--target", target, "Minimum lateral clearance to reproduce, in m")
      ->check(CLI::NonNegativeNumber)
      ->envname("VISTA_TARGET");
  auto * seed_opt = generate->add_option("--seed", seed, "Random seed")->envname("VISTA_SEED");
  generate->add_option("--spec", spec_file, "Scenario override file (JSON)")->envname("VISTA_SPEC");

  cli.add_subcommand("schema", "Print the column schema as JSON");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : vista::app::kOperationalError;
  }

  if (layout == "flat") {
    options.layout = vista::LayoutKind::flat;
  } else if (layout == "distributed") {
    options.layout = vista::LayoutKind::distributed;
  }
  options.axis_order = axis_order == "lon_lat" ? vista::AxisOrder::lon_lat : vista::AxisOrder::lat_lon;
  if (*seed_opt) {
    options.seed = seed;
  }

  if (*validate) {
    return vista::app::cmd_validate(inputs, options, std::cout, std::cerr);
  }
  if (*evaluate) {
    return vista::app::cmd_evaluate(inputs, options, std::cout, std::cerr);
  }
  if (*report) {
    return vista::app::cmd_report(inputs, options, std::cout, std::cerr);
  }
  if (*fidelity) {
    std::optional<double> fixed;
    if (*offset_opt) {
      fixed = offset;
    }
    return vista::app::cmd_fidelity(virtual_path, reference_path, fixed, options, std::cout, std::cerr);
  }
  if (*generate) {
    vista::app::GenerateRequest request;
    request.scenario_case = *vista::synth::parse_case(case_name);
    request.spec_file = spec_file;
    if (*runs_opt) {
      request.runs = runs;
    }
    if (*target_opt) {
      request.target = target;
    }
    return vista::app::cmd_generate(request, options, std::cout, std::cerr);
  }
  return vista::app::cmd_schema(std::cout);
}
