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

#include "hqc/holopath.hpp"

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hqc::cli {

/// Bad user input; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "10MHz" -> 2 pi x 10 MHz in rad/ns. Accepts GHz, MHz, kHz, Hz (all with the
/// 2 pi factor) and rad/ns. A bare number is rad/ns only when raw_rad_ns is set.
double parse_frequency(const std::string& text, bool raw_rad_ns, const std::string& field);

/// Radians: "1.2", "pi", "pi/4", "0.76pi", "3pi/2".
double parse_angle(const std::string& text, const std::string& field);

/// Comma list ("2,10,20") or inclusive range "lo:hi" / "lo:hi:step".
std::vector<double> parse_list(const std::string& text, const std::string& field);

/// s, t, sqrth, h, x (theta = pi/2, gamma = pi).
GateSpec named_gate(const std::string& name);

struct ConfigEntry {
  int line = 0;
  std::string key;
  std::string value;
};

/// Flat `key = value` lines; `#` starts a comment. Keys are long flag names without dashes.
std::vector<ConfigEntry> read_config(std::istream& in, const std::string& source);
std::vector<ConfigEntry> read_config_file(const std::string& path);

}  // namespace hqc::cli
