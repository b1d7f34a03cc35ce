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

#include <functional>
#include <string>
#include <vector>

namespace hqc {

struct SparseEntry {
  std::size_t row;
  std::size_t col;
  cplx value;
};

/// A time-dependent Hermitian Hamiltonian H(t) in rad/ns, assembled from
/// tagged terms so that coherent errors can be injected afterwards.
///
/// The time axis is split into segments at the boundary instants. A term
/// belongs either to one segment or to all of them (`kAllSegments`); the
/// integrator always evaluates a segment's terms at that segment's own
/// endpoints, so square pulses switch exactly on a step boundary.
class HamiltonianSchedule {
 public:
  static constexpr int kAllSegments = -1;

  using Amplitude = std::function<cplx(double)>;
  using Scalar = std::function<double(double)>;

  /// H(row, col) += weight * a(t) and the Hermitian-conjugate entry.
  struct Coupling {
    std::size_t row;
    std::size_t col;
    cplx weight{1.0, 0.0};
  };

  /// Laser drive; scaled by (1 + eps) under a Rabi-frequency error.
  struct DriveTerm {
    std::string label;
    std::vector<Coupling> couplings;
    Amplitude amplitude;
    int segment = kAllSegments;
  };

  /// Real diagonal contribution (detunings, level shifts).
  struct DiagonalTerm {
    std::string label;
    std::vector<std::size_t> indices;
    Scalar value;
    int segment = kAllSegments;
  };

  /// Diagonal entries that receive the detuning error during one segment.
  struct ErrorProjector {
    std::vector<std::size_t> indices;
    int segment = kAllSegments;
  };

  HamiltonianSchedule(std::size_t dim, double t_start, double t_end);

  std::size_t dim() const { return dim_; }
  double t_start() const { return boundaries_.front(); }
  double t_end() const { return boundaries_.back(); }
  double duration() const { return t_end() - t_start(); }

  /// Segment edges, including t_start and t_end.
  const std::vector<double>& boundaries() const { return boundaries_; }
  std::size_t segment_count() const { return boundaries_.size() - 1; }
  /// Segment containing t (right-continuous; t_end belongs to the last one).
  std::size_t segment_at(double t) const;

  /// Inserts a segment boundary; returns nothing, keeps boundaries sorted.
  void add_boundary(double t);
  void add_drive(DriveTerm term);
  void add_diagonal(DiagonalTerm term);
  void add_static(const CMatrix& hermitian);
  void add_error_projector(ErrorProjector p) { error_projectors_.push_back(std::move(p)); }

  void set_excited_indices(std::vector<std::size_t> idx) { excited_ = std::move(idx); }
  const std::vector<std::size_t>& excited_indices() const { return excited_; }

  /// Fastest explicit phase rotation inside the terms (e.g. e^{-i Delta t}),
  /// which the sampled matrix norm does not reveal.
  void set_rate_hint(double rad_per_ns) { rate_hint_ = rad_per_ns; }
  double rate_hint() const { return rate_hint_; }
  /// Carrier frequency of an oscillating drive such as cos(omega t); 0 if none.
  void set_carrier(double omega) { carrier_ = omega; }
  double carrier() const { return carrier_; }

  const std::vector<DriveTerm>& drives() const { return drives_; }
  const std::vector<DiagonalTerm>& diagonals() const { return diagonals_; }
  const std::vector<ErrorProjector>& error_projectors() const { return error_projectors_; }
  std::vector<DriveTerm>& drives() { return drives_; }

  bool has_error_tags() const { return !drives_.empty() && !error_projectors_.empty(); }

  CMatrix eval(double t) const { return eval(t, segment_at(t)); }
  CMatrix eval(double t, std::size_t segment) const;
  /// Appends the nonzero entries of H(t) (duplicates allowed, they add).
  void eval_entries(double t, std::size_t segment, std::vector<SparseEntry>& out) const;

  /// Upper bound on ||H(t)|| inside a segment (sampled max row sum) plus the rate hint.
  double frequency_scale(std::size_t segment) const;

 private:
  std::size_t dim_;
  std::vector<double> boundaries_;
  std::vector<DriveTerm> drives_;
  std::vector<DiagonalTerm> diagonals_;
  std::vector<SparseEntry> static_;
  std::vector<ErrorProjector> error_projectors_;
  std::vector<std::size_t> excited_;
  double rate_hint_ = 0.0;
  double carrier_ = 0.0;
};

}  // namespace hqc
