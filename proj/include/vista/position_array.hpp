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

#ifndef VISTA__POSITION_ARRAY_HPP_
#define VISTA__POSITION_ARRAY_HPP_

#include "vista/model.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vista
{

// Serialized list of positions stored in a single CSV cell:
//
//   [< count] | a b [z] | a b [z] ... [|] [>]
//
// Components are kept positionally. No commas are allowed anywhere.
struct RawPosition
{
  double first{};
  double second{};
  std::optional<double> third{};

  bool operator==(const RawPosition &) const = default;
};

/// Throws Error{malformed_array | count_mismatch | empty_array}.
std::vector<RawPosition> parse_position_array(std::string_view text);

/// With emit_count the output follows the `< n | a b | c d >` layout,
/// otherwise each position is fenced: `|a b|c d|`. Throws Error{empty_array}.
std::string serialize_position_array(
  std::span<const RawPosition> positions, bool emit_count = false, bool emit_z = false);

/// Which geographic component comes first inside a WGS84 position cell. The
/// grammar names them `lat lng`, while published sample data lists longitude
/// first; the reader and writer take this as an explicit switch.
enum class AxisOrder { lat_lon, lon_lat };

std::vector<GeoPosition> to_geo(std::span<const RawPosition> raw, AxisOrder order);
std::vector<VcsPosition> to_vcs(std::span<const RawPosition> raw);
std::vector<RawPosition> to_raw(std::span<const GeoPosition> geo, AxisOrder order);
std::vector<RawPosition> to_raw(std::span<const VcsPosition> vcs);

/// Parses a bounding polygon in the given frame; a repeated closing vertex
/// is dropped.
BoundingShape parse_shape(std::string_view text, Frame frame, AxisOrder order);

/// Writes the closed form (first vertex repeated) with a count prefix.
std::string serialize_shape(const BoundingShape & shape, AxisOrder order);

}  // namespace vista

#endif  // VISTA__POSITION_ARRAY_HPP_
