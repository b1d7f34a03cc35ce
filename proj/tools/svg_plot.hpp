// Copyright 2026 The HQC Toolkit Authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hqc::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Static line plot, fixed 640x420 canvas, auto-scaled axes.
void write_svg(std::ostream& os, const std::string& title, const std::string& xlabel, const std::string& ylabel,
               const std::vector<Series>& series);

}  // namespace hqc::cli
