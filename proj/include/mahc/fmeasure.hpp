// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mahc {

/// Cluster-by-class co-occurrence counts.
class ContingencyTable {
 public:
  std::size_t clusters() const noexcept { return cluster_sizes_.size(); }
  std::size_t classes() const noexcept { return class_sizes_.size(); }
  std::size_t total() const noexcept { return total_; }

  std::size_t count(std::size_t k, std::size_t l) const noexcept { return counts_[k * classes() + l]; }
  std::size_t cluster_size(std::size_t k) const noexcept { return cluster_sizes_[k]; }
  std::size_t class_size(std::size_t l) const noexcept { return class_sizes_[l]; }

  friend ContingencyTable contingency(std::span<const std::size_t>, std::span<const std::size_t>);

 private:
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> cluster_sizes_;
  std::vector<std::size_t> class_sizes_;
  std::size_t total_ = 0;
};

/// Builds the table from parallel arrays of cluster ids and class ids. Ids
/// need not be dense; the table is sized by the largest id + 1, and ids that
/// never occur get zero margins. Throws on length mismatch or empty input.
ContingencyTable contingency(std::span<const std::size_t> clusters,
                             std::span<const std::size_t> classes);

double precision(std::size_t n_kl, std::size_t n_k);
double recall(std::size_t n_kl, std::size_t n_l);

/// Harmonic mean of precision and recall; 0 when n_kl = 0.
double f_pair(std::size_t k, std::size_t l, const ContingencyTable& table);

/// Class-size weighted best-match F: sum_l (n_l / N) max_k F(k, l).
double dataset_f_measure(const ContingencyTable& table);

}  // namespace mahc
