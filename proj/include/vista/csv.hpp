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

#ifndef VISTA__CSV_HPP_
#define VISTA__CSV_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vista::csv
{

// Comma-delimited, UTF-8 (BOM tolerated), LF or CRLF, RFC 4180 quoting.
struct Record
{
  std::int64_t line{0};
  std::vector<std::string> cells;
};

struct Document
{
  std::vector<Record> records;
  std::string error;  // non-empty when the text is not well-formed CSV
  std::int64_t error_line{0};
};

Document parse(std::string_view content);

/// Throws vista::Error{io_failure} when the file cannot be read.
std::string read_text(const std::filesystem::path & path);

std::string format_record(const std::vector<std::string> & cells);

}  // namespace vista::csv

#endif  // VISTA__CSV_HPP_
