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

#include "hqc/qmath.hpp"

// Internal units: time in ns, frequencies as angular frequencies in rad/ns.
// Everything quoted as "2pi x f MHz" goes through these helpers once.
namespace hqc::units {

/// 2pi x f MHz -> rad/ns
constexpr double mhz(double f) { return 2.0 * kPi * f * 1e-3; }
/// 2pi x f kHz -> rad/ns
constexpr double khz(double f) { return 2.0 * kPi * f * 1e-6; }
/// rad/ns -> f such that value = 2pi x f MHz
constexpr double to_mhz(double rad_per_ns) { return rad_per_ns / (2.0 * kPi * 1e-3); }

}  // namespace hqc::units
