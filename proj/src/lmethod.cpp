// SPDX-License-Identifier: Apache-2.0
#include "mahc/lmethod.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mahc/error.hpp"

namespace mahc {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorKind::InvalidArgument, "fit_line: x and y differ in length");
  const std::size_t n = x.size();
  if (n < 2) fail(ErrorKind::InvalidArgument, "fit_line: need at least 2 points");

  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mean_x) * (x[i] - mean_x);
    sxy += (x[i] - mean_x) * (y[i] - mean_y);
  }
  if (sxx == 0.0) fail(ErrorKind::InvalidArgument, "fit_line: x values are all equal");

  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    sse += r * r;
  }
  fit.rmse = std::sqrt(sse / static_cast<double>(n));
  return fit;
}

namespace {

constexpr std::size_t kMinPoints = 4;
constexpr std::size_t kMinRefineCutoff = 20;
// Objectives closer than this (relative to the curve's scale) count as tied.
constexpr double kTieTolerance = 1e-12;

std::vector<double> xs_for(std::size_t count) {
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i) xs[i] = static_cast<double>(i + 2);
  return xs;
}

// Best split over the points with x in [2, last_x].
std::size_t knee(const EvaluationCurve& curve, std::size_t last_x) {
  const std::size_t first_c = 3;
  const std::size_t last_c = last_x - 2;  // keeps two points on the right
  std::vector<double> objective;
  objective.reserve(last_c - first_c + 1);
  for (std::size_t c = first_c; c <= last_c; ++c)
    objective.push_back(l_method_objective(curve, c, last_x));

  double scale = 0.0;
  for (std::size_t i = 0; i + 1 < last_x; ++i) scale = std::max(scale, std::abs(curve.heights[i]));
  const double best = *std::min_element(objective.begin(), objective.end());
  const double eps = kTieTolerance * scale;
  for (std::size_t i = 0; i < objective.size(); ++i)
    if (objective[i] <= best + eps) return first_c + i;
  return first_c;
}

}  // namespace

double l_method_objective(const EvaluationCurve& curve, std::size_t c, std::size_t last_x) {
  if (last_x > curve.last_x() || c < 3 || c + 2 > last_x)
    fail(ErrorKind::InvalidArgument, "l_method_objective: split " + std::to_string(c) +
                                         " not admissible for last x " + std::to_string(last_x));
  const std::vector<double> xs = xs_for(last_x - 1);
  const std::span<const double> x(xs);
  const std::span<const double> y(curve.heights.data(), last_x - 1);
  const std::size_t left = c - 1;  // points x = 2..c
  const LineFit l = fit_line(x.first(left), y.first(left));
  const LineFit r = fit_line(x.subspan(left), y.subspan(left));
  const double total = static_cast<double>(last_x - 1);
  return (static_cast<double>(c - 1) / total) * l.rmse +
         (static_cast<double>(last_x - c) / total) * r.rmse;
}

LMethodResult l_method(const EvaluationCurve& curve, const LMethodOptions& options) {
  if (curve.size() < kMinPoints) return {2, true};
  for (double h : curve.heights)
    if (!(h >= 0.0)) fail(ErrorKind::InvalidArgument, "l_method: negative or NaN curve value");

  std::size_t cutoff = curve.last_x();
  std::size_t current = knee(curve, cutoff);
  if (options.refine) {
    for (;;) {
      const std::size_t next_cutoff = std::min(cutoff, std::max(2 * current, kMinRefineCutoff));
      if (next_cutoff >= cutoff) break;
      cutoff = next_cutoff;
      const std::size_t next = knee(curve, cutoff);
      if (next >= current) break;
      current = next;
    }
  }
  return {current, false};
}

}  // namespace mahc
