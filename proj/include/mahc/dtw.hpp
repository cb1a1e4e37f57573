// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "mahc/dataset.hpp"

namespace mahc {

struct DtwOptions {
  /// Divide the accumulated cost by (n_a + n_b).
  bool normalize = false;
  /// Use squared Euclidean frame cost instead of Euclidean.
  bool squared_cost = false;
};

/// Euclidean distance between two frames of equal dimension.
double frame_cost(std::span<const double> x, std::span<const double> y);

/// Unconstrained symmetric DTW with steps {(1,1),(1,0),(0,1)}, both ends
/// anchored, no slope weights. Memory is two rows of the shorter segment.
/// dtw_distance(a, b) and dtw_distance(b, a) are bit-identical.
double dtw_distance(const Segment& a, const Segment& b, const DtwOptions& options = {});

}  // namespace mahc
