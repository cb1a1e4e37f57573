// SPDX-License-Identifier: Apache-2.0
#include "mahc/fmeasure.hpp"

#include <algorithm>

#include "mahc/error.hpp"

namespace mahc {

ContingencyTable contingency(std::span<const std::size_t> clusters,
                             std::span<const std::size_t> classes) {
  if (clusters.size() != classes.size())
    fail(ErrorKind::InvalidArgument, "contingency: " + std::to_string(clusters.size()) +
                                         " assignments for " + std::to_string(classes.size()) +
                                         " labels");
  if (clusters.empty()) fail(ErrorKind::InvalidArgument, "contingency: no objects");

  ContingencyTable t;
  const std::size_t k = *std::max_element(clusters.begin(), clusters.end()) + 1;
  const std::size_t l = *std::max_element(classes.begin(), classes.end()) + 1;
  t.counts_.assign(k * l, 0);
  t.cluster_sizes_.assign(k, 0);
  t.class_sizes_.assign(l, 0);
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    ++t.counts_[clusters[i] * l + classes[i]];
    ++t.cluster_sizes_[clusters[i]];
    ++t.class_sizes_[classes[i]];
  }
  t.total_ = clusters.size();
  return t;
}

double precision(std::size_t n_kl, std::size_t n_k) {
  if (n_k == 0) fail(ErrorKind::InvalidArgument, "precision: empty cluster");
  return static_cast<double>(n_kl) / static_cast<double>(n_k);
}

double recall(std::size_t n_kl, std::size_t n_l) {
  if (n_l == 0) fail(ErrorKind::InvalidArgument, "recall: empty class");
  return static_cast<double>(n_kl) / static_cast<double>(n_l);
}

double f_pair(std::size_t k, std::size_t l, const ContingencyTable& table) {
  const std::size_t n_kl = table.count(k, l);
  if (n_kl == 0) return 0.0;
  const double pr = precision(n_kl, table.cluster_size(k));
  const double re = recall(n_kl, table.class_size(l));
  return 2.0 * re * pr / (re + pr);
}

double dataset_f_measure(const ContingencyTable& table) {
  double weighted = 0.0;
  for (std::size_t l = 0; l < table.classes(); ++l) {
    if (table.class_size(l) == 0) continue;
    double best = 0.0;
    for (std::size_t k = 0; k < table.clusters(); ++k) best = std::max(best, f_pair(k, l, table));
    weighted += static_cast<double>(table.class_size(l)) * best;
  }
  return weighted / static_cast<double>(table.total());
}

}  // namespace mahc
