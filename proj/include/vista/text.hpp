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

#ifndef VISTA__TEXT_HPP_
#define VISTA__TEXT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vista::text
{

std::string_view trim(std::string_view s);

/// Shortest representation that parses back to the identical double.
/// +inf is written as `inf`.
std::string format_number(double value);

/// Strict decimal parse of the whole token. Accepts `inf` only when
/// allow_infinity is set; never accepts nan.
std::optional<double> parse_number(std::string_view token, bool allow_infinity = false);
std::optional<std::int64_t> parse_integer(std::string_view token);

}  // namespace vista::text

#endif  // VISTA__TEXT_HPP_
