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

#include <cmath>
#include <functional>

namespace hqc::quad {

/// Adaptive Simpson with Richardson correction.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-13,
                        int max_depth = 48);

/// Composite 5-point Gauss-Legendre on `panels` equal panels.
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels = 64);

/// Golden-section maximisation of a unimodal f on [a, b]; returns the argmax.
double golden_max(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

}  // namespace hqc::quad
