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

#include "vista/text.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <system_error>

namespace vista::text
{

std::string_view trim(std::string_view s)
{
  constexpr std::string_view kSpace = " \t\r\n";
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

std::string format_number(double value)
{
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) {
    return "nan";
  }
  return std::string(buf.data(), ptr);
}

std::optional<double> parse_number(std::string_view token, bool allow_infinity)
{
  token = trim(token);
  if (token.empty()) {
    return std::nullopt;
  }
  if (token.front() == '+') {
    token.remove_prefix(1);
  }
  double value = 0.0;
  const char * end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end || std::isnan(value)) {
    return std::nullopt;
  }
  if (std::isinf(value) && !allow_infinity) {
    return std::nullopt;
  }
  return value;
}

std::optional<std::int64_t> parse_integer(std::string_view token)
{
  token = trim(token);
  if (!token.empty() && token.front() == '+') {
    token.remove_prefix(1);
  }
  std::int64_t value = 0;
  const char * end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end) {
    return std::nullopt;
  }
  return value;
}

}  // namespace vista::text
