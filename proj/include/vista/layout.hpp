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

#ifndef VISTA__LAYOUT_HPP_
#define VISTA__LAYOUT_HPP_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace vista
{

enum class LayoutKind { flat, distributed };

/// Where one run lives on disk: a single `results_<id>_r<run>.csv` file, or a
/// `<id>_r<run>` folder holding the role files.
struct FileLayout
{
  LayoutKind kind{LayoutKind::flat};
  std::filesystem::path root;
  std::string testcase_id;
  int run_id{1};
};

namespace role
{
inline constexpr std::string_view kVut = "VUT_status.csv";
inline constexpr std::string_view kActorsTrue = "Environment_actors_true.csv";
inline constexpr std::string_view kActorsPerceived = "Environment_actors_perceived.csv";
inline constexpr std::string_view kObstaclesTrue = "Environment_obstacles_true.csv";
inline constexpr std::string_view kObstaclesPerceived = "Environment_obstacles_perceived.csv";
inline constexpr std::string_view kLightsTrue = "TrafficLight_true.csv";
inline constexpr std::string_view kLightsPerceived = "TrafficLight_perceived.csv";

inline constexpr std::array<std::string_view, 7> kAll{
  kVut, kActorsTrue, kActorsPerceived, kObstaclesTrue, kObstaclesPerceived, kLightsTrue,
  kLightsPerceived};
}  // namespace role

struct RunName
{
  std::string testcase_id;
  int run_id{0};
  bool canonical{true};
};

/// `results_<testcase_id>_r<run_id>.csv`, run_id of 1-3 digits. The bare
/// `<testcase_id>_r<run_id>.csv` form is recognised as non-canonical.
std::optional<RunName> parse_flat_name(std::string_view file_name);

/// `<testcase_id>_r<run_id>`; a `results_` prefix is tolerated as non-canonical.
std::optional<RunName> parse_folder_name(std::string_view folder_name);

std::string flat_file_name(std::string_view testcase_id, int run_id);
std::string folder_name(std::string_view testcase_id, int run_id);

/// Layout rooted under an output directory, named by convention.
FileLayout make_layout(
  LayoutKind kind, const std::filesystem::path & out_dir, std::string_view testcase_id,
  int run_id);

/// Regular file -> flat, directory -> distributed.
std::optional<LayoutKind> detect_layout(const std::filesystem::path & path);

}  // namespace vista

#endif  // VISTA__LAYOUT_HPP_
