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

#include "hqc/schedule.hpp"

#include <algorithm>
#include <cmath>

namespace hqc {

namespace {

bool active(int term_segment, std::size_t segment) {
  return term_segment == HamiltonianSchedule::kAllSegments ||
         static_cast<std::size_t>(term_segment) == segment;
}

}  // namespace

HamiltonianSchedule::HamiltonianSchedule(std::size_t dim, double t_start, double t_end)
    : dim_(dim), boundaries_{t_start, t_end} {
  if (dim == 0) throw DimensionError("HamiltonianSchedule: zero dimension");
  if (!(t_end > t_start)) throw std::invalid_argument("HamiltonianSchedule: empty time interval");
}

std::size_t HamiltonianSchedule::segment_at(double t) const {
  const auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), t);
  const auto idx = static_cast<std::size_t>(std::distance(boundaries_.begin(), it));
  if (idx == 0) return 0;
  return std::min(idx - 1, segment_count() - 1);
}

void HamiltonianSchedule::add_boundary(double t) {
  if (t <= t_start() || t >= t_end()) return;
  const auto it = std::lower_bound(boundaries_.begin(), boundaries_.end(), t);
  if (it != boundaries_.end() && *it == t) return;
  boundaries_.insert(it, t);
}

void HamiltonianSchedule::add_drive(DriveTerm term) {
  for (const auto& c : term.couplings)
    if (c.row >= dim_ || c.col >= dim_ || c.row == c.col)
      throw DimensionError("add_drive: coupling '" + term.label + "' is out of range or diagonal");
  drives_.push_back(std::move(term));
}

void HamiltonianSchedule::add_diagonal(DiagonalTerm term) {
  for (auto i : term.indices)
    if (i >= dim_) throw DimensionError("add_diagonal: index out of range in '" + term.label + "'");
  diagonals_.push_back(std::move(term));
}

void HamiltonianSchedule::add_static(const CMatrix& hermitian) {
  if (hermitian.rows() != dim_ || hermitian.cols() != dim_)
    throw DimensionError("add_static: shape mismatch");
  if (hermiticity_deviation(hermitian) > 1e-12)
    throw std::invalid_argument("add_static: matrix is not Hermitian");
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c)
      if (hermitian(r, c) != cplx{0.0, 0.0}) static_.push_back({r, c, hermitian(r, c)});
}

CMatrix HamiltonianSchedule::eval(double t, std::size_t segment) const {
  std::vector<SparseEntry> entries;
  eval_entries(t, segment, entries);
  CMatrix h(dim_, dim_);
  for (const auto& e : entries) h(e.row, e.col) += e.value;
  return h;
}

void HamiltonianSchedule::eval_entries(double t, std::size_t segment,
                                       std::vector<SparseEntry>& out) const {
  out.insert(out.end(), static_.begin(), static_.end());
  for (const auto& d : drives_) {
    if (!active(d.segment, segment)) continue;
    const cplx a = d.amplitude(t);
    for (const auto& c : d.couplings) {
      const cplx v = c.weight * a;
      out.push_back({c.row, c.col, v});
      out.push_back({c.col, c.row, std::conj(v)});
    }
  }
  for (const auto& d : diagonals_) {
    if (!active(d.segment, segment)) continue;
    const double v = d.value(t);
    for (auto i : d.indices) out.push_back({i, i, cplx{v, 0.0}});
  }
}

double HamiltonianSchedule::frequency_scale(std::size_t segment) const {
  constexpr int kSamples = 64;
  const double a = boundaries_[segment];
  const double b = boundaries_[segment + 1];
  double best = 0.0;
  for (int k = 0; k <= kSamples; ++k) {
    const double t = a + (b - a) * k / kSamples;
    best = std::max(best, inf_norm(eval(t, segment)));
  }
  return best + rate_hint_;
}

}  // namespace hqc
