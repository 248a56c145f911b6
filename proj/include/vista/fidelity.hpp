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

#ifndef VISTA__FIDELITY_HPP_
#define VISTA__FIDELITY_HPP_

#include "vista/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vista::fidelity
{

inline constexpr double kSearchWindow = 5.0;
inline constexpr double kSearchStep = 0.01;
inline constexpr double kMaxResampleRate = 100.0;
inline constexpr double kMinOverlapFraction = 0.8;
inline constexpr double kMinDuration = 2.0;

/// Non-normative defaults; override per authority.
struct Tolerances
{
  double position_rmse{0.5};
  double speed_rmse{0.5};
  double heading_rmse{5.0};
};

/// {"position_rmse": m, "speed_rmse": m/s, "heading_rmse": deg}, all keys
/// optional. Throws Error{invalid_argument}.
Tolerances parse_tolerances(std::string_view json_text);

/// Offset tau in [-5, 5] s, on a 0.01 s lattice, minimising the mean squared
/// difference between reference speed at t + tau and virtual speed at t.
/// Throws Error{insufficient_overlap}.
double align(const Trace & virtual_trace, const Trace & reference);

struct FidelityReport
{
  double offset{0.0};
  double resample_rate{0.0};
  std::size_t samples{0};
  double position_rmse{0.0};
  double speed_rmse{0.0};
  double heading_rmse{0.0};
  double max_position_deviation{0.0};
  bool position_pass{false};
  bool speed_pass{false};
  bool heading_pass{false};
  bool pass{false};
  bool recalibration_needed{true};
};

/// Resamples both VUT tracks onto a common uniform grid (linear
/// interpolation, max native rate capped at 100 Hz) over the aligned overlap
/// and reports RMSEs. `offset` skips alignment. Throws
/// Error{insufficient_overlap} when the overlap is below 80 % of the shorter
/// trace.
FidelityReport compare(
  const Trace & virtual_trace, const Trace & reference, const Tolerances & tolerances = {},
  std::optional<double> offset = std::nullopt);

/// Seeded sample of ceil(fraction * N) ids, returned in input order.
/// Throws Error{invalid_argument} unless 0 < fraction <= 1.
std::vector<std::string> select_recalibration_subset(
  const std::vector<std::string> & testcase_ids, double fraction = 0.20, std::uint64_t seed = 0);

}  // namespace vista::fidelity

#endif  // VISTA__FIDELITY_HPP_
