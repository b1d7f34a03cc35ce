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

#include "hqc/metrics.hpp"

#include <cstdio>
#include <ostream>

namespace hqc {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void SweepResult::write_csv(std::ostream& os) const {
  for (const auto& a : axes) os << a.name << ',';
  os << "fidelity\n";
  if (axes.size() == 1) {
    for (std::size_t i = 0; i < axes[0].values.size(); ++i)
      os << num(axes[0].values[i]) << ',' << num(values.at(i)) << '\n';
    return;
  }
  if (axes.size() != 2) throw std::logic_error("SweepResult: only 1-D and 2-D grids are supported");
  for (std::size_t i = 0; i < axes[0].values.size(); ++i)
    for (std::size_t j = 0; j < axes[1].values.size(); ++j)
      os << num(axes[0].values[i]) << ',' << num(axes[1].values[j]) << ',' << num(at(i, j)) << '\n';
}

nlohmann::json SweepResult::to_json() const {
  nlohmann::json j;
  j["axes"] = nlohmann::json::array();
  for (const auto& a : axes) j["axes"].push_back({{"name", a.name}, {"unit", a.unit}, {"values", a.values}});
  j["fidelity"] = values;
  j["provenance"] = provenance;
  return j;
}

}  // namespace hqc
