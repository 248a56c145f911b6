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

#include "vista/position_array.hpp"

#include "vista/error.hpp"
#include "vista/text.hpp"

#include <string>
#include <variant>

namespace vista
{

namespace
{

RawPosition parse_position(std::string_view segment)
{
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos < segment.size()) {
    while (pos < segment.size() && (segment[pos] == ' ' || segment[pos] == '\t')) {
      ++pos;
    }
    if (pos >= segment.size()) {
      break;
    }
    std::size_t end = pos;
    while (end < segment.size() && segment[end] != ' ' && segment[end] != '\t') {
      ++end;
    }
    const auto token = segment.substr(pos, end - pos);
    auto value = text::parse_number(token);
    if (!value) {
      throw Error(Errc::malformed_array, "non-numeric token '" + std::string(token) + "'");
    }
    values.push_back(*value);
    pos = end;
  }
  if (values.size() < 2 || values.size() > 3) {
    throw Error(
      Errc::malformed_array,
      "position needs 2 or 3 components, got " + std::to_string(values.size()));
  }
  RawPosition out{values[0], values[1], std::nullopt};
  if (values.size() == 3) {
    out.third = values[2];
  }
  return out;
}

void append_position(std::string & out, const RawPosition & p, bool emit_z)
{
  out += text::format_number(p.first);
  out += ' ';
  out += text::format_number(p.second);
  if (emit_z && p.third) {
    out += ' ';
    out += text::format_number(*p.third);
  }
}

}  // namespace

std::vector<RawPosition> parse_position_array(std::string_view input)
{
  std::string_view body = text::trim(input);
  if (body.empty()) {
    throw Error(Errc::empty_array, "empty position array");
  }
  if (body.find(',') != std::string_view::npos) {
    throw Error(Errc::malformed_array, "position arrays must not contain commas");
  }

  std::optional<std::int64_t> declared;
  if (body.front() == '<') {
    body.remove_prefix(1);
    const auto bar = body.find('|');
    const auto close = body.find('>');
    const auto count_end = std::min(bar, close);
    const auto count_text = text::trim(body.substr(0, count_end));
    declared = text::parse_integer(count_text);
    if (!declared || *declared < 0) {
      throw Error(Errc::malformed_array, "bad count prefix '" + std::string(count_text) + "'");
    }
    body = count_end == std::string_view::npos ? std::string_view{} : body.substr(count_end);
  }
  body = text::trim(body);
  if (!body.empty() && body.back() == '>') {
    body.remove_suffix(1);
    body = text::trim(body);
  }
  if (body.find_first_of("<>") != std::string_view::npos) {
    throw Error(Errc::malformed_array, "unexpected '<' or '>' inside position array");
  }

  std::vector<RawPosition> positions;
  if (!body.empty()) {
    if (body.front() != '|') {
      throw Error(Errc::malformed_array, "positions must be delimited by '|'");
    }
    body.remove_prefix(1);
    if (!body.empty() && body.back() == '|') {
      body.remove_suffix(1);
    }
    std::size_t start = 0;
    while (true) {
      const auto bar = body.find('|', start);
      const auto segment = text::trim(body.substr(start, bar - start));
      if (segment.empty()) {
        throw Error(Errc::malformed_array, "empty position between delimiters");
      }
      positions.push_back(parse_position(segment));
      if (bar == std::string_view::npos) {
        break;
      }
      start = bar + 1;
    }
  }

  if (declared && static_cast<std::size_t>(*declared) != positions.size()) {
    if (positions.empty()) {
      throw Error(Errc::empty_array, "position array declares no positions");
    }
    throw Error(
      Errc::count_mismatch, "declared " + std::to_string(*declared) + " positions, found " +
                              std::to_string(positions.size()));
  }
  if (positions.empty()) {
    throw Error(Errc::empty_array, "position array holds no positions");
  }
  return positions;
}

std::string serialize_position_array(
  std::span<const RawPosition> positions, bool emit_count, bool emit_z)
{
  if (positions.empty()) {
    throw Error(Errc::empty_array, "cannot serialize an empty position array");
  }
  std::string out;
  if (emit_count) {
    out += "< ";
    out += std::to_string(positions.size());
    for (const auto & p : positions) {
      out += " | ";
      append_position(out, p, emit_z);
    }
    out += " >";
    return out;
  }
  out += '|';
  for (const auto & p : positions) {
    append_position(out, p, emit_z);
    out += '|';
  }
  return out;
}

std::vector<GeoPosition> to_geo(std::span<const RawPosition> raw, AxisOrder order)
{
  std::vector<GeoPosition> out;
  out.reserve(raw.size());
  for (const auto & p : raw) {
    if (order == AxisOrder::lat_lon) {
      out.push_back(GeoPosition{p.first, p.second, p.third});
    } else {
      out.push_back(GeoPosition{p.second, p.first, p.third});
    }
  }
  return out;
}

std::vector<VcsPosition> to_vcs(std::span<const RawPosition> raw)
{
  std::vector<VcsPosition> out;
  out.reserve(raw.size());
  for (const auto & p : raw) {
    out.push_back(VcsPosition{p.first, p.second, p.third});
  }
  return out;
}

std::vector<RawPosition> to_raw(std::span<const GeoPosition> geo, AxisOrder order)
{
  std::vector<RawPosition> out;
  out.reserve(geo.size());
  for (const auto & p : geo) {
    if (order == AxisOrder::lat_lon) {
      out.push_back(RawPosition{p.lat, p.lon, p.elev});
    } else {
      out.push_back(RawPosition{p.lon, p.lat, p.elev});
    }
  }
  return out;
}

std::vector<RawPosition> to_raw(std::span<const VcsPosition> vcs)
{
  std::vector<RawPosition> out;
  out.reserve(vcs.size());
  for (const auto & p : vcs) {
    out.push_back(RawPosition{p.x, p.y, p.z});
  }
  return out;
}

BoundingShape parse_shape(std::string_view text, Frame frame, AxisOrder order)
{
  const auto raw = parse_position_array(text);
  if (frame == Frame::wgs84) {
    return make_shape(to_geo(raw, order));
  }
  return make_shape(to_vcs(raw));
}

std::string serialize_shape(const BoundingShape & shape, AxisOrder order)
{
  std::vector<RawPosition> raw = std::visit(
    [order](const auto & vertices) {
      using T = std::decay_t<decltype(vertices)>;
      if constexpr (std::is_same_v<T, std::vector<GeoPosition>>) {
        return to_raw(vertices, order);
      } else {
        return to_raw(vertices);
      }
    },
    shape.vertices);
  bool any_z = false;
  for (const auto & p : raw) {
    any_z = any_z || p.third.has_value();
  }
  if (raw.size() > 1) {
    raw.push_back(raw.front());
  }
  return serialize_position_array(raw, true, any_z);
}

}  // namespace vista
