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

#include "hqc/units.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace hqc::cli {

struct RecipeOptions {
  std::string out_dir = ".";
  double omega_m = units::mhz(10);
  int samples = 1001;     ///< single-qubit input states
  int samples_2q = 1001;  ///< two-qubit input states
  int points = 21;        ///< error-axis grid points
  bool svg = false;
};

const std::vector<std::string>& recipe_names();

/// Writes <out_dir>/<name>*.csv plus <name>.json and returns the summary JSON.
/// Unknown names throw ConfigError listing the available recipes.
nlohmann::json run_recipe(const std::string& name, const RecipeOptions& o, std::ostream& log);

}  // namespace hqc::cli
