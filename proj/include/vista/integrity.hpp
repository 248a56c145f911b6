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

#ifndef VISTA__INTEGRITY_HPP_
#define VISTA__INTEGRITY_HPP_

#include "vista/findings.hpp"
#include "vista/model.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace vista
{

inline constexpr double kJitterTolerance = 0.10;

/// Where each record came from, so that trace-level findings can point at a
/// file row. Optional; rows default to 0.
struct SourceMap
{
  struct Rows
  {
    std::string file;
    std::vector<std::int64_t> rows;
  };
  Rows vut;
  std::map<std::string, Rows> actors;
  std::map<std::string, Rows> obstacles;
  std::map<std::string, Rows> controllers;
};

/// Structural invariants of a Trace: clock monotonicity, step sync between
/// entities and the VUT, start at t = 0, value ranges and shape validity.
std::vector<Finding> validate_trace(const Trace & trace, const SourceMap * source = nullptr);

/// FrequencyTooLow when the median VUT rate is below f_min; JitterExceeded
/// when any VUT period deviates from the median by more than 10 %.
std::vector<Finding> check_frequency(const Trace & trace, double f_min);

/// InsufficientRuns when fewer than n_required distinct run ids exist,
/// DuplicateRun for repeated ids, MixedTestCases for differing test case ids.
std::vector<Finding> check_run_set(std::span<const Trace> runs, int n_required);

struct RunIdentity
{
  std::string testcase_id;
  int run_id{0};
};
std::vector<Finding> check_run_set(std::span<const RunIdentity> runs, int n_required);

}  // namespace vista

#endif  // VISTA__INTEGRITY_HPP_
