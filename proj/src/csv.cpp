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

#include "vista/csv.hpp"

#include "vista/error.hpp"

#include <fstream>
#include <sstream>

namespace vista::csv
{

Document parse(std::string_view content)
{
  Document doc;
  if (content.substr(0, 3) == "\xEF\xBB\xBF") {
    content.remove_prefix(3);
  }

  std::int64_t line = 1;
  std::size_t i = 0;
  const std::size_t n = content.size();
  while (i < n) {
    Record record;
    record.line = line;
    std::string cell;
    bool record_done = false;
    while (!record_done) {
      if (i < n && content[i] == '"') {
        const std::int64_t quote_line = line;
        ++i;
        bool closed = false;
        while (i < n) {
          const char c = content[i];
          if (c == '"') {
            if (i + 1 < n && content[i + 1] == '"') {
              cell += '"';
              i += 2;
              continue;
            }
            ++i;
            closed = true;
            break;
          }
          if (c == '\n') {
            ++line;
          }
          cell += c;
          ++i;
        }
        if (!closed) {
          doc.error = "unterminated quoted field";
          doc.error_line = quote_line;
          return doc;
        }
        if (i < n && content[i] != ',' && content[i] != '\n' && content[i] != '\r') {
          doc.error = "unexpected character after closing quote";
          doc.error_line = line;
          return doc;
        }
      }
      while (i < n && content[i] != ',' && content[i] != '\n' && content[i] != '\r') {
        cell += content[i];
        ++i;
      }
      record.cells.push_back(std::move(cell));
      cell.clear();
      if (i >= n) {
        record_done = true;
      } else if (content[i] == ',') {
        ++i;
      } else {
        if (content[i] == '\r') {
          ++i;
        }
        if (i < n && content[i] == '\n') {
          ++i;
        }
        ++line;
        record_done = true;
      }
    }
    const bool blank = record.cells.size() == 1 && record.cells.front().empty();
    if (!blank) {
      doc.records.push_back(std::move(record));
    }
  }
  return doc;
}

std::string read_text(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io_failure, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw Error(Errc::io_failure, "read failure on " + path.string());
  }
  return buffer.str();
}

std::string format_record(const std::vector<std::string> & cells)
{
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    const auto & cell = cells[i];
    if (cell.find_first_of(",\"\n\r") != std::string::npos) {
      out += '"';
      for (char c : cell) {
        if (c == '"') {
          out += '"';
        }
        out += c;
      }
      out += '"';
    } else {
      out += cell;
    }
  }
  out += '\n';
  return out;
}

}  // namespace vista::csv
