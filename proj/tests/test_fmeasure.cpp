// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mahc/error.hpp"
#include "mahc/fmeasure.hpp"
#include "oracles.hpp"

using namespace mahc;

namespace {
using Ids = std::vector<std::size_t>;
}

TEST_CASE("contingency tables") {
  SUBCASE("identical partitions give a diagonal") {
    const Ids a{0, 0, 0, 1, 1, 1};
    const ContingencyTable t = contingency(a, a);
    CHECK(t.count(0, 0) == 3);
    CHECK(t.count(1, 1) == 3);
    CHECK(t.count(0, 1) == 0);
    CHECK(t.count(1, 0) == 0);
  }
  SUBCASE("one cluster, classes of sizes 1, 2, 3") {
    const ContingencyTable t = contingency(Ids{0, 0, 0, 0, 0, 0}, Ids{0, 1, 1, 2, 2, 2});
    CHECK(t.clusters() == 1);
    CHECK(t.count(0, 0) == 1);
    CHECK(t.count(0, 1) == 2);
    CHECK(t.count(0, 2) == 3);
  }
  SUBCASE("margins match direct counting") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::size_t> k(0, 6), l(0, 4);
    Ids c(100), y(100);
    for (std::size_t i = 0; i < 100; ++i) {
      c[i] = k(rng);
      y[i] = l(rng);
    }
    const ContingencyTable t = contingency(c, y);
    CHECK(t.total() == 100);
    for (std::size_t a = 0; a < t.clusters(); ++a)
      CHECK(t.cluster_size(a) == std::size_t(std::count(c.begin(), c.end(), a)));
    for (std::size_t b = 0; b < t.classes(); ++b)
      CHECK(t.class_size(b) == std::size_t(std::count(y.begin(), y.end(), b)));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(contingency(Ids{0, 1}, Ids{0}), Error);
    CHECK_THROWS_AS(contingency(Ids{}, Ids{}), Error);
  }
}

TEST_CASE("precision and recall") {
  CHECK(precision(5, 10) == 0.5);
  CHECK(precision(7, 7) == 1.0);
  CHECK(precision(0, 7) == 0.0);
  CHECK(recall(3, 4) == 0.75);
  CHECK_THROWS_AS(precision(0, 0), Error);
  CHECK_THROWS_AS(recall(0, 0), Error);
}

TEST_CASE("pairwise F") {
  // cluster 0 = {a,a,b,b}, cluster 1 = {c}
  const ContingencyTable t = contingency(Ids{0, 0, 0, 0, 1}, Ids{0, 0, 1, 1, 2});
  CHECK(f_pair(0, 0, t) == doctest::Approx(2.0 / 3.0));  // pr 0.5, re 1
  CHECK(f_pair(1, 2, t) == 1.0);
  CHECK(f_pair(1, 0, t) == 0.0);
}

TEST_CASE("dataset F") {
  CHECK(dataset_f_measure(contingency(Ids{0, 0, 0, 1, 1, 1}, Ids{0, 0, 0, 1, 1, 1})) == 1.0);
  CHECK(dataset_f_measure(contingency(Ids{0, 0, 0, 0, 0, 0}, Ids{0, 0, 0, 1, 1, 1})) ==
        doctest::Approx(2.0 / 3.0));
}

TEST_CASE("perfect clustering is exactly one under relabelling") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    Ids y(57);
    std::uniform_int_distribution<std::size_t> l(0, 8);
    for (auto& v : y) v = l(rng);
    Ids perm(9);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Ids c(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) c[i] = perm[y[i]];
    CHECK(dataset_f_measure(contingency(c, y)) == 1.0);
  }
}

TEST_CASE("agrees with an independent evaluator") {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 100; ++rep) {
    std::uniform_int_distribution<std::size_t> kk(1, 12), ll(1, 8);
    const std::size_t k = kk(rng), l = ll(rng);
    std::uniform_int_distribution<std::size_t> pk(0, k - 1), pl(0, l - 1);
    Ids c(50), y(50);
    for (std::size_t i = 0; i < 50; ++i) {
      c[i] = pk(rng);
      y[i] = pl(rng);
    }
    const double got = dataset_f_measure(contingency(c, y));
    CHECK(std::abs(got - oracle::f_measure(c, y)) <= 1e-12);
    CHECK(got > 0.0);
    CHECK(got <= 1.0);
  }
}

TEST_CASE("cluster ids only matter as a partition") {
  std::mt19937_64 rng(12);
  Ids c(40), y(40);
  std::uniform_int_distribution<std::size_t> pk(0, 5), pl(0, 3);
  for (std::size_t i = 0; i < 40; ++i) {
    c[i] = pk(rng);
    y[i] = pl(rng);
  }
  Ids shifted = c;
  for (auto& v : shifted) v = 10 + (5 - v);
  CHECK(dataset_f_measure(contingency(c, y)) == dataset_f_measure(contingency(shifted, y)));
}
