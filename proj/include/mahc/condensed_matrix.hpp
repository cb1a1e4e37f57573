// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include "mahc/dataset.hpp"

namespace mahc {

/// Flat index of pair (i, j), i < j < n, in row-major upper-triangular order.
std::size_t condensed_index(std::size_t i, std::size_t j, std::size_t n);

/// Number of stored pairs for n objects.
constexpr std::size_t pair_count(std::size_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Upper-triangular pairwise distance store of n(n-1)/2 doubles. The diagonal
/// is implicitly zero and may not be accessed.
class CondensedMatrix {
 public:
  CondensedMatrix() = default;
  explicit CondensedMatrix(std::size_t n);
  CondensedMatrix(std::size_t n, std::vector<double> values);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }

  /// Symmetric access; throws on i == j or out of range.
  double get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, double value);

  // Unchecked access for i < j.
  double& at_upper(std::size_t i, std::size_t j) noexcept {
    return values_[i * n_ - i * (i + 1) / 2 + (j - i - 1)];
  }
  double at_upper(std::size_t i, std::size_t j) const noexcept {
    return values_[i * n_ - i * (i + 1) / 2 + (j - i - 1)];
  }

  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

using PairDistance = std::function<double(const Segment&, const Segment&)>;

/// Computes all pairwise distances of a subset. Work is split into contiguous
/// flat-index ranges, one per worker, so the result is bit-identical for any
/// worker count. `max_objects` (0 = unlimited) guards against building a
/// matrix for a subset above the configured occupancy cap.
CondensedMatrix build_matrix(const SubsetView& view, const PairDistance& distance,
                             std::size_t workers = 1, std::size_t max_objects = 0);

// Binary cache format: "MAHCCM01", u64 n, u64 count, then count f64, all
// little-endian.
void write_matrix(std::ostream& out, const CondensedMatrix& matrix);
CondensedMatrix read_matrix(std::istream& in);

}  // namespace mahc
