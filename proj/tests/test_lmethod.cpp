// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mahc/error.hpp"
#include "mahc/lmethod.hpp"
#include "oracles.hpp"

using namespace mahc;

namespace {

// Two line segments: steep over x <= c, shallow over x > c, with a step
// between them so that no point lies on both lines.
EvaluationCurve corner(std::size_t c, std::size_t b, double steep = 10.0, double shallow = 0.5) {
  EvaluationCurve curve;
  for (std::size_t x = 2; x <= b; ++x) {
    const double right = shallow * static_cast<double>(b - x) + 1.0;
    const double at_c1 = shallow * static_cast<double>(b - c - 1) + 1.0;
    curve.heights.push_back(x > c ? right
                                  : at_c1 + steep * (static_cast<double>(c + 2) - static_cast<double>(x)));
  }
  return curve;
}

std::size_t brute_force_knee(const EvaluationCurve& curve) {
  if (curve.size() < 4) return 2;
  const auto scan = oracle::knee_scan(curve.heights);
  double best = INFINITY;
  for (const auto& [c, v] : scan) best = std::min(best, v);
  double scale = 0.0;
  for (double h : curve.heights) scale = std::max(scale, std::abs(h));
  for (const auto& [c, v] : scan)
    if (v <= best + 1e-9 * scale) return c;
  return 0;
}

}  // namespace

TEST_CASE("fit an exact line") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y;
  for (double v : x) y.push_back(2 * v + 1);
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.rmse == doctest::Approx(0.0));
}

TEST_CASE("two points interpolate") {
  const std::vector<double> x{3, 8}, y{-1, 7.5};
  CHECK(fit_line(x, y).rmse == doctest::Approx(0.0));
}

TEST_CASE("three points against the normal equations") {
  const std::vector<double> x{2, 3, 4}, y{4, 5, 7};
  const oracle::Line expect = oracle::fit(x, y);
  const LineFit f = fit_line(x, y);
  // slope 1.5, intercept 0.8333.., residuals 1/6, -1/3, 1/6
  CHECK(expect.slope == doctest::Approx(1.5));
  CHECK(f.slope == doctest::Approx(expect.slope).epsilon(1e-14));
  CHECK(f.intercept == doctest::Approx(expect.intercept).epsilon(1e-14));
  CHECK(f.rmse == doctest::Approx(expect.rmse).epsilon(1e-12));
  CHECK(f.rmse == doctest::Approx(std::sqrt(1.0 / 18.0)).epsilon(1e-12));
}

TEST_CASE("fit rejects degenerate input") {
  const std::vector<double> one{1}, two{1, 1}, y{0, 1};
  CHECK_THROWS_AS(fit_line(one, one), Error);
  CHECK_THROWS_AS(fit_line(two, y), Error);
}

TEST_CASE("exact corner is recovered") {
  const EvaluationCurve curve = corner(10, 50);
  CHECK(l_method(curve).clusters == 10);
  CHECK_FALSE(l_method(curve).fallback);
  CHECK(brute_force_knee(curve) == 10);
  CHECK(l_method_objective(curve, 10, curve.last_x()) == doctest::Approx(0.0));
}

TEST_CASE("corners anywhere in range") {
  for (std::size_t b : {8u, 20u, 77u})
    for (std::size_t c = 3; c + 2 <= b; ++c) {
      CAPTURE(b);
      CAPTURE(c);
      CHECK(l_method(corner(c, b)).clusters == c);
    }
}

TEST_CASE("linear curve takes the smallest tied split") {
  EvaluationCurve curve;
  for (std::size_t x = 2; x <= 40; ++x) curve.heights.push_back(100.0 - 2.0 * double(x));
  CHECK(l_method(curve).clusters == brute_force_knee(curve));
  CHECK(l_method(curve).clusters == 3);
}

TEST_CASE("short curves fall back to two") {
  EvaluationCurve curve{{5.0, 2.0, 1.0}};
  const LMethodResult r = l_method(curve);
  CHECK(r.clusters == 2);
  CHECK(r.fallback);
  CHECK(l_method(EvaluationCurve{{1.0}}).fallback);
  CHECK_FALSE(l_method(EvaluationCurve{{5.0, 2.0, 1.0, 0.5}}).fallback);
}

TEST_CASE("random curves agree with the exhaustive scan") {
  std::mt19937_64 rng(17);
  std::exponential_distribution<double> e(1.0);
  for (int rep = 0; rep < 100; ++rep) {
    std::uniform_int_distribution<std::size_t> len(3, 120);
    EvaluationCurve curve;
    curve.heights.resize(len(rng));
    for (double& h : curve.heights) h = e(rng);
    std::sort(curve.heights.rbegin(), curve.heights.rend());
    CHECK(l_method(curve).clusters == brute_force_knee(curve));
    for (const auto& [c, v] : oracle::knee_scan(curve.heights))
      CHECK(l_method_objective(curve, c, curve.last_x()) == doctest::Approx(v).epsilon(1e-9));
  }
}

TEST_CASE("knee is unchanged by scaling the curve") {
  std::mt19937_64 rng(2);
  std::exponential_distribution<double> e(1.0);
  for (int rep = 0; rep < 20; ++rep) {
    EvaluationCurve curve;
    curve.heights.resize(60);
    for (double& h : curve.heights) h = e(rng);
    std::sort(curve.heights.rbegin(), curve.heights.rend());
    EvaluationCurve scaled = curve;
    for (double& h : scaled.heights) h *= 1024.0;
    CHECK(l_method(curve).clusters == l_method(scaled).clusters);
  }
}

TEST_CASE("refinement keeps an early corner on a long tail") {
  const EvaluationCurve curve = corner(10, 400, 50.0, 0.01);
  const LMethodResult r = l_method(curve, LMethodOptions{.refine = true});
  CHECK(r.clusters == 10);
  CHECK(r.clusters <= l_method(curve).clusters);
}

TEST_CASE("objective rejects inadmissible splits") {
  const EvaluationCurve curve = corner(6, 20);
  CHECK_THROWS_AS(l_method_objective(curve, 2, curve.last_x()), Error);
  CHECK_THROWS_AS(l_method_objective(curve, 19, curve.last_x()), Error);
  CHECK_THROWS_AS(l_method_objective(curve, 5, 21), Error);
}
