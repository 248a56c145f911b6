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

#include "vista/layout.hpp"

#include "vista/error.hpp"

#include <cstdio>
#include <regex>
#include <system_error>

namespace vista
{

namespace
{

std::optional<RunName> match_name(std::string_view name, const std::regex & pattern, bool canonical)
{
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(name.begin(), name.end(), m, pattern)) {
    return std::nullopt;
  }
  RunName out;
  out.testcase_id = m[1].str();
  out.run_id = std::stoi(m[2].str());
  out.canonical = canonical;
  if (out.run_id < 1 || out.testcase_id.empty()) {
    return std::nullopt;
  }
  return out;
}

std::string run_suffix(int run_id)
{
  char buf[16];
  std::snprintf(buf, sizeof(buf), "_r%02d", run_id);
  return buf;
}

}  // namespace

std::optional<RunName> parse_flat_name(std::string_view file_name)
{
  static const std::regex canonical{R"(results_([^/\\]+)_r(\d{1,3})\.csv)"};
  static const std::regex bare{R"(([^/\\]+)_r(\d{1,3})\.csv)"};
  if (auto m = match_name(file_name, canonical, true)) {
    return m;
  }
  return match_name(file_name, bare, false);
}

std::optional<RunName> parse_folder_name(std::string_view folder)
{
  static const std::regex prefixed{R"(results_([^/\\]+)_r(\d{1,3}))"};
  static const std::regex canonical{R"(([^/\\]+)_r(\d{1,3}))"};
  if (auto m = match_name(folder, prefixed, false)) {
    return m;
  }
  return match_name(folder, canonical, true);
}

std::string flat_file_name(std::string_view testcase_id, int run_id)
{
  return "results_" + std::string(testcase_id) + run_suffix(run_id) + ".csv";
}

std::string folder_name(std::string_view testcase_id, int run_id)
{
  return std::string(testcase_id) + run_suffix(run_id);
}

FileLayout make_layout(
  LayoutKind kind, const std::filesystem::path & out_dir, std::string_view testcase_id,
  int run_id)
{
  if (run_id < 1 || run_id > 999) {
    throw Error(Errc::invalid_argument, "run id must be in 1..999");
  }
  FileLayout layout;
  layout.kind = kind;
  layout.testcase_id = std::string(testcase_id);
  layout.run_id = run_id;
  layout.root = out_dir / (kind == LayoutKind::flat ? flat_file_name(testcase_id, run_id)
                                                   : folder_name(testcase_id, run_id));
  return layout;
}

std::optional<LayoutKind> detect_layout(const std::filesystem::path & path)
{
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) {
    return LayoutKind::distributed;
  }
  if (std::filesystem::is_regular_file(path, ec)) {
    return LayoutKind::flat;
  }
  return std::nullopt;
}

}  // namespace vista
