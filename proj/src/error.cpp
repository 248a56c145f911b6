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

#include "vista/error.hpp"

namespace vista
{

std::string_view to_string(Errc code)
{
  switch (code) {
    case Errc::malformed_array: return "MalformedArray";
    case Errc::count_mismatch: return "CountMismatch";
    case Errc::empty_array: return "EmptyArray";
    case Errc::extent_exceeded: return "ExtentExceeded";
    case Errc::coincident_points: return "CoincidentPoints";
    case Errc::degenerate_polygon: return "DegeneratePolygon";
    case Errc::unknown_entity: return "UnknownEntity";
    case Errc::insufficient_overlap: return "InsufficientOverlap";
    case Errc::infeasible_spec: return "InfeasibleSpec";
    case Errc::io_failure: return "IoFailure";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string & what)
: std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

}  // namespace vista
