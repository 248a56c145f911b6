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

#ifndef VISTA__ERROR_HPP_
#define VISTA__ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace vista
{

enum class Errc {
  malformed_array,
  count_mismatch,
  empty_array,
  extent_exceeded,
  coincident_points,
  degenerate_polygon,
  unknown_entity,
  insufficient_overlap,
  infeasible_spec,
  io_failure,
  invalid_argument,
};

std::string_view to_string(Errc code);

/// Error raised by operations whose contract names a failure mode.
class Error : public std::runtime_error
{
public:
  Error(Errc code, const std::string & what);

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

}  // namespace vista

#endif  // VISTA__ERROR_HPP_
