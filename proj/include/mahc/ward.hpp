// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "mahc/condensed_matrix.hpp"

namespace mahc {

/// One agglomeration. Leaves are 0..n-1; the k-th merge creates node n+k.
/// left < right always.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double height = 0.0;
  std::size_t size = 0;
};

class Dendrogram {
 public:
  Dendrogram() = default;
  /// Validates n-1 merges over n leaves (children used once, sizes add up,
  /// heights non-decreasing). Throws Error(Internal) otherwise.
  Dendrogram(std::size_t leaves, std::vector<Merge> merges);

  std::size_t leaves() const noexcept { return leaves_; }
  const std::vector<Merge>& merges() const noexcept { return merges_; }

 private:
  std::size_t leaves_ = 0;
  std::vector<Merge> merges_;
};

/// Flat clustering: a cluster id in [0, k) per object, every id non-empty.
struct Assignment {
  std::vector<std::size_t> labels;
  std::size_t k = 0;

  std::size_t size() const noexcept { return labels.size(); }
  /// Members of every cluster, each list in increasing object order.
  std::vector<std::vector<std::size_t>> groups() const;
};

struct WardOptions {
  /// Square the input dissimilarities before running the recurrence. Off by
  /// default: the values themselves play the role of squared distances.
  bool square_input = false;
};

/// Ward linkage by nearest-neighbour chain with the Lance-Williams update
/// d(k, i+j) = ((n_i+n_k) d(k,i) + (n_j+n_k) d(k,j) - n_k d(i,j)) / (n_i+n_j+n_k).
/// Heights are the recurrence values at merge time. The matrix is consumed.
Dendrogram ward_ahc(CondensedMatrix matrix, const WardOptions& options = {});

/// Undoes the last k-1 merges. Cluster ids are numbered by smallest member.
Assignment cut(const Dendrogram& dendrogram, std::size_t k);

/// Evaluation graph for the L method: heights[c - 2] is the height of the
/// merge undone going from c-1 to c clusters, c in [2, n].
struct EvaluationCurve {
  std::vector<double> heights;

  std::size_t size() const noexcept { return heights.size(); }
  /// Largest cluster count on the curve.
  std::size_t last_x() const noexcept { return heights.size() + 1; }
};

EvaluationCurve merge_height_curve(const Dendrogram& dendrogram);

/// CSV rows `left,right,height,size` in merge order, with a header.
void write_dendrogram_csv(std::ostream& out, const Dendrogram& dendrogram);

}  // namespace mahc
