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

#ifndef VISTA__READER_HPP_
#define VISTA__READER_HPP_

#include "vista/findings.hpp"
#include "vista/layout.hpp"
#include "vista/model.hpp"
#include "vista/position_array.hpp"

#include <filesystem>
#include <optional>
#include <string_view>

namespace vista
{

struct ParseOptions
{
  /// Component order of WGS84 vertices inside position-array cells.
  AxisOrder axis_order{AxisOrder::lat_lon};
};

/// `trace` is set only when `report` holds no error findings.
struct ParseResult
{
  std::optional<Trace> trace;
  IntegrityReport report;
};

/// One row per step; repeated entity column groups each start at their id
/// column. Test case and run ids come from the file name.
ParseResult parse_flat(const std::filesystem::path & file, const ParseOptions & options = {});

/// Same as parse_flat on in-memory content; `file_name` supplies the ids.
ParseResult parse_flat_text(
  std::string_view content, std::string_view file_name, const ParseOptions & options = {});

/// Folder holding the role files; entity rows join the VUT clock on step.
ParseResult parse_distributed(
  const std::filesystem::path & folder, const ParseOptions & options = {});

/// Dispatches on the hint, or on the path type when no hint is given.
ParseResult parse_any(
  const std::filesystem::path & path, std::optional<LayoutKind> hint = std::nullopt,
  const ParseOptions & options = {});

}  // namespace vista

#endif  // VISTA__READER_HPP_
