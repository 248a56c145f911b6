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

#ifndef VISTA__SCHEMA_HPP_
#define VISTA__SCHEMA_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace vista::schema
{

enum class Group : std::uint8_t { common, vut, actor, obstacle, controller };

enum class Presence : std::uint8_t {
  mandatory,
  optional,
  /// One of the WGS84 (lat/lon) or VCS (x/y) position pairs must be present.
  position_pair,
};

struct ColumnSpec
{
  std::string_view name;
  Group group;
  std::string_view unit;
  std::string_view type;
  Presence presence;
  bool nullable;   // cell may be left empty
  bool perceived;  // lives in a *_perceived file in the distributed layout
  std::string_view description;
};

std::span<const ColumnSpec> columns();
const ColumnSpec * find(std::string_view name);

std::string_view to_string(Group group);
std::string_view to_string(Presence presence);

inline constexpr std::string_view kTime = "Time";
inline constexpr std::string_view kStep = "Step_number";
inline constexpr std::string_view kActorId = "Actor_Id";
inline constexpr std::string_view kObstacleId = "Obst_Id";
inline constexpr std::string_view kControllerId = "Traffic_Ctrl_Id";

/// Column table rendered as the JSON document shipped in schema/.
std::string to_json_text();

}  // namespace vista::schema

#endif  // VISTA__SCHEMA_HPP_
