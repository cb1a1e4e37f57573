// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>

#include "mahc/ward.hpp"

namespace mahc {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rmse = 0.0;
};

/// Ordinary least squares over at least two points with distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct LMethodOptions {
  /// Iteratively shrink the curve to twice the current knee until it stops
  /// moving, after Salvador & Chan.
  bool refine = false;
};

struct LMethodResult {
  std::size_t clusters = 2;
  /// Set when the curve was too short and the result is the fallback of 2.
  bool fallback = false;
};

/// Knee of the merge-height curve. For each split c, the left line is fitted
/// to points x <= c and the right one to x > c; the c minimising
/// ((c-1)/(b-1)) rmse_left + ((b-c)/(b-1)) rmse_right wins, smallest c on ties.
/// Needs at least four points; shorter curves fall back to 2.
LMethodResult l_method(const EvaluationCurve& curve, const LMethodOptions& options = {});

/// The objective above for one split point c over the first `last_x - 1`
/// points of the curve.
double l_method_objective(const EvaluationCurve& curve, std::size_t c, std::size_t last_x);

}  // namespace mahc
