// SPDX-License-Identifier: Apache-2.0
#include "mahc/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mahc/error.hpp"

namespace mahc {
namespace {

double squared_euclidean(std::span<const double> x, std::span<const double> y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double diff = x[i] - y[i];
    acc += diff * diff;
  }
  return acc;
}

// Orders the pair so that the shorter segment is the inner dimension, and a
// tie in length is broken by frame data. Both argument orders then run the
// exact same sequence of floating-point operations.
bool swap_for_canonical_order(const Segment& a, const Segment& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return std::lexicographical_compare(b.frames.begin(), b.frames.end(), a.frames.begin(),
                                      a.frames.end());
}

}  // namespace

double frame_cost(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    fail(ErrorKind::InvalidArgument, "frame_cost: dimension mismatch (" + std::to_string(x.size()) +
                                         " vs " + std::to_string(y.size()) + ")");
  return std::sqrt(squared_euclidean(x, y));
}

double dtw_distance(const Segment& a, const Segment& b, const DtwOptions& options) {
  if (a.dim != b.dim)
    fail(ErrorKind::InvalidArgument, "dtw: dimension mismatch between segments " +
                                         std::to_string(a.id) + " and " + std::to_string(b.id));
  const bool swap = swap_for_canonical_order(a, b);
  const Segment& outer = swap ? b : a;
  const Segment& inner = swap ? a : b;
  const std::size_t rows = outer.length();
  const std::size_t cols = inner.length();

  auto cost = [&](std::size_t i, std::size_t j) {
    const double sq = squared_euclidean(outer.frame(i), inner.frame(j));
    return options.squared_cost ? sq : std::sqrt(sq);
  };

  std::vector<double> prev(cols), curr(cols);
  prev[0] = cost(0, 0);
  for (std::size_t j = 1; j < cols; ++j) prev[j] = prev[j - 1] + cost(0, j);

  for (std::size_t i = 1; i < rows; ++i) {
    curr[0] = prev[0] + cost(i, 0);
    for (std::size_t j = 1; j < cols; ++j)
      curr[j] = cost(i, j) + std::min({prev[j - 1], prev[j], curr[j - 1]});
    std::swap(prev, curr);
  }

  double total = prev[cols - 1];
  if (options.normalize) total /= static_cast<double>(rows + cols);
  return total;
}

}  // namespace mahc
