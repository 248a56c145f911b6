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

#ifndef VISTA__REPORT_HPP_
#define VISTA__REPORT_HPP_

#include "vista/fidelity.hpp"
#include "vista/findings.hpp"
#include "vista/model.hpp"
#include "vista/rules.hpp"

#include <string>
#include <string_view>

namespace vista::report
{

// Every renderer is a pure function of its inputs, so identical inputs give
// byte-identical output. Infinite quantities appear as null in JSON and as
// `inf` in text and CSV.

std::string integrity_json(std::string_view source, const IntegrityReport & report);
std::string integrity_text(std::string_view source, const IntegrityReport & report);

std::string evaluation_json(const rules::RunEvaluation & run);
std::string evaluation_text(const rules::RunEvaluation & run);

std::string summary_json(const rules::TestCaseEvaluation & summary);
std::string summary_text(const rules::TestCaseEvaluation & summary);

std::string fidelity_json(
  const fidelity::FidelityReport & result, const fidelity::Tolerances & tolerances);
std::string fidelity_text(
  const fidelity::FidelityReport & result, const fidelity::Tolerances & tolerances);

/// step,time,entity_id,lateral,longitudinal,euclidean_min,ntd
std::string clearance_csv(const rules::RunEvaluation & run);
/// step,time,speed,acc_long,acc_lat,yaw_rate,heading
std::string kinematics_csv(const Trace & trace);
/// step,time,entity_id,lat,lon,x,y; the VUT appears as entity `VUT`.
std::string trajectory_csv(const Trace & trace);

}  // namespace vista::report

#endif  // VISTA__REPORT_HPP_
