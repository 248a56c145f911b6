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

#ifndef VISTA__WRITER_HPP_
#define VISTA__WRITER_HPP_

#include "vista/layout.hpp"
#include "vista/model.hpp"
#include "vista/position_array.hpp"

#include <string>

namespace vista
{

/// Flat layout: one file at `layout.root`. Distributed layout: the folder at
/// `layout.root` receives VUT_status.csv and the three ground-truth files;
/// perceived files are written only when perceived data exists. Optional
/// columns appear only when some record carries a value.
/// Throws Error{io_failure}.
void write_trace(
  const Trace & trace, const FileLayout & layout, AxisOrder axis_order = AxisOrder::lat_lon);

/// Content of the flat file.
std::string flat_text(const Trace & trace, AxisOrder axis_order = AxisOrder::lat_lon);

}  // namespace vista

#endif  // VISTA__WRITER_HPP_
