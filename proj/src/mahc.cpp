// SPDX-License-Identifier: Apache-2.0
#include "mahc/mahc.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include "mahc/error.hpp"
#include "mahc/fmeasure.hpp"
#include "parallel.hpp"

namespace mahc {
namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

// Blocks of sizes ceil(n/p) then floor(n/p) over an already shuffled order.
std::vector<SubsetView> even_blocks(const Dataset& dataset, const std::vector<std::size_t>& order,
                                    std::size_t parts) {
  std::vector<SubsetView> out;
  out.reserve(parts);
  const std::size_t n = order.size();
  const std::size_t base = n / parts;
  const std::size_t larger = n % parts;
  std::size_t pos = 0;
  for (std::size_t p = 0; p < parts; ++p) {
    const std::size_t len = base + (p < larger ? 1 : 0);
    out.push_back(SubsetView::make(
        dataset, std::vector<std::size_t>(order.begin() + static_cast<std::ptrdiff_t>(pos),
                                          order.begin() + static_cast<std::ptrdiff_t>(pos + len))));
    pos += len;
  }
  return out;
}

std::vector<std::size_t> all_medoids(const std::vector<SubsetClustering>& clustering) {
  std::vector<std::size_t> out;
  for (const auto& c : clustering) out.insert(out.end(), c.medoids.begin(), c.medoids.end());
  return out;
}

void check_partition(const Dataset& dataset, const std::vector<SubsetView>& subsets) {
  std::vector<bool> seen(dataset.size(), false);
  std::size_t total = 0;
  for (const auto& s : subsets) {
    ensure(!s.empty(), "subsets are non-empty");
    for (std::size_t pos : s.members()) {
      ensure(!seen[pos], "subsets are disjoint");
      seen[pos] = true;
      ++total;
    }
  }
  ensure(total == dataset.size(), "subsets cover the dataset");
}

// Relabels so cluster ids follow the smallest member position.
Assignment canonical(std::vector<std::size_t> labels) {
  Assignment out;
  std::vector<std::size_t> remap;
  for (auto& l : labels) {
    if (l >= remap.size()) remap.resize(l + 1, SIZE_MAX);
    if (remap[l] == SIZE_MAX) remap[l] = out.k++;
    l = remap[l];
  }
  out.labels = std::move(labels);
  return out;
}

// Largest cut that never undoes a zero-height merge, i.e. never separates
// exact duplicates.
std::size_t separable_clusters(const Dendrogram& dendrogram) {
  std::size_t positive = 0;
  for (const Merge& m : dendrogram.merges()) positive += m.height > 0.0 ? 1 : 0;
  return positive + 1;
}

double score(const Dataset& dataset, const Assignment& assignment) {
  return dataset_f_measure(contingency(assignment.labels, dataset.class_indices()));
}

}  // namespace

void MahcConfig::validate() const {
  auto invalid = [](const std::string& why) { fail(ErrorKind::InvalidArgument, "config: " + why); };
  if (p0 < 1) invalid("p0 must be at least 1");
  if (manage_size && beta < 2) invalid("beta must be at least 2");
  if (max_iters < 1) invalid("max_iters must be at least 1");
  if (convergence_window < 1) invalid("convergence_window must be at least 1");
  if (workers < 1) invalid("workers must be at least 1");
  if (final_k && *final_k < 1) invalid("final_k must be at least 1");
}

PairDistance make_distance(const MahcConfig& config) {
  return [options = config.dtw](const Segment& a, const Segment& b) {
    return dtw_distance(a, b, options);
  };
}

std::vector<SubsetView> initial_partition(const Dataset& dataset, std::size_t p,
                                          std::uint64_t seed) {
  const std::size_t n = dataset.size();
  if (p < 1 || p > n)
    fail(ErrorKind::InvalidArgument, "initial_partition: need 1 <= P0 <= N, got P0=" +
                                         std::to_string(p) + " for N=" + std::to_string(n));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(derive_seed(seed, 0));
  std::shuffle(order.begin(), order.end(), rng);
  return even_blocks(dataset, order, p);
}

std::vector<std::size_t> compute_medoids(const SubsetView& subset, const Assignment& clusters,
                                         const CondensedMatrix& matrix) {
  ensure(clusters.size() == subset.size(), "assignment covers the subset");
  std::vector<std::size_t> medoids;
  medoids.reserve(clusters.k);
  for (const auto& members : clusters.groups()) {
    ensure(!members.empty(), "clusters are non-empty");
    std::size_t best = members.front();
    double best_sum = 0.0;
    bool first = true;
    for (std::size_t c : members) {
      double sum = 0.0;
      for (std::size_t o : members)
        if (o != c) sum += matrix.get(c, o);
      // Members are in increasing position order, so strict < keeps the
      // smallest position on ties.
      if (first || sum < best_sum) {
        best = c;
        best_sum = sum;
        first = false;
      }
    }
    medoids.push_back(subset.position(best));
  }
  return medoids;
}

SubsetClustering cluster_subset(const SubsetView& subset, const MahcConfig& config,
                                std::size_t workers, std::size_t max_objects) {
  SubsetClustering out;
  if (subset.size() == 1) {
    out.clusters.labels = {0};
    out.clusters.k = 1;
    out.medoids = {subset.position(0)};
    return out;
  }
  CondensedMatrix matrix = build_matrix(subset, make_distance(config), workers, max_objects);
  const Dendrogram dendrogram = ward_ahc(matrix, config.ward);
  const LMethodResult knee = l_method(merge_height_curve(dendrogram), config.lmethod);
  out.lmethod_fallback = knee.fallback;
  out.clusters = cut(dendrogram, std::min(knee.clusters, separable_clusters(dendrogram)));
  out.medoids = compute_medoids(subset, out.clusters, matrix);
  return out;
}

std::vector<SubsetClustering> stage_one(const std::vector<SubsetView>& subsets,
                                        const MahcConfig& config, std::size_t max_objects) {
  const std::size_t outer = std::max<std::size_t>(1, std::min(config.workers, subsets.size()));
  const std::size_t inner = std::max<std::size_t>(1, config.workers / outer);
  std::vector<SubsetClustering> results(subsets.size());
  detail::parallel_for(subsets.size(), outer, [&](std::size_t p) {
    results[p] = cluster_subset(subsets[p], config, inner, max_objects);
  });
  return results;
}

MedoidGrouping regroup_medoids(const Dataset& dataset, const std::vector<std::size_t>& medoids,
                               std::size_t target_groups, const MahcConfig& config) {
  if (target_groups < 1) fail(ErrorKind::InvalidArgument, "regroup_medoids: need at least 1 group");
  const std::size_t s = medoids.size();
  MedoidGrouping out;
  if (s <= target_groups) {
    out.degenerate = s < target_groups;
    out.groups.labels.resize(s);
    std::iota(out.groups.labels.begin(), out.groups.labels.end(), 0);
    out.groups.k = s;
    return out;
  }
  if (target_groups == 1) {
    out.groups.labels.assign(s, 0);
    out.groups.k = 1;
    return out;
  }
  // The view orders medoids by dataset position; map back afterwards.
  const SubsetView view = SubsetView::make(dataset, medoids);
  const Dendrogram dendrogram =
      ward_ahc(build_matrix(view, make_distance(config), config.workers), config.ward);
  const Assignment sorted = cut(dendrogram, target_groups);
  std::vector<std::size_t> labels(s);
  for (std::size_t i = 0; i < s; ++i) {
    const auto it = std::lower_bound(view.members().begin(), view.members().end(), medoids[i]);
    labels[i] = sorted.labels[static_cast<std::size_t>(it - view.members().begin())];
  }
  out.groups = canonical(std::move(labels));
  return out;
}

std::vector<SubsetView> refine(const Dataset& dataset, const std::vector<SubsetView>& subsets,
                               const std::vector<SubsetClustering>& clustering,
                               const Assignment& groups) {
  ensure(subsets.size() == clustering.size(), "one clustering per subset");
  std::vector<std::vector<std::size_t>> members(groups.k);
  std::size_t offset = 0;
  for (std::size_t p = 0; p < subsets.size(); ++p) {
    const auto& labels = clustering[p].clusters.labels;
    ensure(labels.size() == subsets[p].size(), "clustering covers its subset");
    for (std::size_t j = 0; j < labels.size(); ++j)
      members[groups.labels.at(offset + labels[j])].push_back(subsets[p].position(j));
    offset += clustering[p].clusters.k;
  }
  ensure(offset == groups.size(), "one group per medoid");

  std::vector<SubsetView> out;
  out.reserve(members.size());
  for (auto& m : members) {
    ensure(!m.empty(), "refined subsets are non-empty");
    out.push_back(SubsetView::make(dataset, std::move(m)));
  }
  return out;
}

std::vector<SubsetView> split(const std::vector<SubsetView>& subsets, std::size_t beta,
                              std::uint64_t seed, std::span<const std::size_t> unit_of) {
  if (beta < 2) fail(ErrorKind::InvalidArgument, "split: beta must be at least 2");
  std::vector<SubsetView> out;
  for (std::size_t p = 0; p < subsets.size(); ++p) {
    const SubsetView& s = subsets[p];
    if (s.size() <= beta) {
      out.push_back(s);
      continue;
    }
    const std::size_t parts = (s.size() + beta - 1) / beta;
    std::vector<std::size_t> order = s.members();
    std::mt19937_64 rng(derive_seed(seed, p));
    std::shuffle(order.begin(), order.end(), rng);
    if (!unit_of.empty()) {
      // Random rank per unit, in order of first appearance in the shuffle.
      std::vector<std::size_t> units;
      for (std::size_t pos : order) units.push_back(unit_of[pos]);
      std::sort(units.begin(), units.end());
      units.erase(std::unique(units.begin(), units.end()), units.end());
      std::shuffle(units.begin(), units.end(), rng);
      std::vector<std::size_t> rank(units.empty() ? 0 : *std::max_element(units.begin(), units.end()) + 1);
      for (std::size_t r = 0; r < units.size(); ++r) rank[units[r]] = r;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return rank[unit_of[a]] < rank[unit_of[b]];
      });
    }
    for (auto& block : even_blocks(s.dataset(), order, parts)) {
      ensure(block.size() <= beta, "split blocks respect beta");
      out.push_back(std::move(block));
    }
  }
  return out;
}

Finalized finalize(const Dataset& dataset, const std::vector<SubsetView>& subsets,
                   const std::vector<SubsetClustering>& clustering, std::size_t k,
                   const MahcConfig& config) {
  if (k < 1) fail(ErrorKind::InvalidArgument, "finalize: k must be at least 1");
  const std::vector<std::size_t> medoids = all_medoids(clustering);
  Finalized out;
  out.k = k;
  if (k > medoids.size()) {
    out.k = medoids.size();
    out.clamped = true;
  }
  const Assignment groups = regroup_medoids(dataset, medoids, out.k, config).groups;

  std::vector<std::size_t> labels(dataset.size(), SIZE_MAX);
  std::size_t offset = 0;
  for (std::size_t p = 0; p < subsets.size(); ++p) {
    const auto& local = clustering[p].clusters.labels;
    for (std::size_t j = 0; j < local.size(); ++j)
      labels[subsets[p].position(j)] = groups.labels[offset + local[j]];
    offset += clustering[p].clusters.k;
  }
  for (std::size_t l : labels) ensure(l != SIZE_MAX, "every segment receives a cluster");
  out.assignment = canonical(std::move(labels));
  ensure(out.assignment.k == out.k, "final cluster count matches k");
  return out;
}

MahcResult run_mahc(const Dataset& dataset, const MahcConfig& config) {
  config.validate();
  MahcResult result;
  std::vector<SubsetView> subsets = initial_partition(dataset, config.p0, config.seed);
  std::vector<std::size_t> p_history;

  for (std::size_t i = 0;; ++i) {
    const auto started = Clock::now();
    check_partition(dataset, subsets);
    const std::size_t cap = config.manage_size && i > 0 ? config.beta : 0;
    const std::vector<SubsetClustering> clustering = stage_one(subsets, config, cap);

    IterationStats stats;
    stats.iteration = i;
    stats.subsets = subsets.size();
    stats.max_occupancy = 0;
    stats.min_occupancy = dataset.size();
    for (const auto& s : subsets) {
      stats.max_occupancy = std::max(stats.max_occupancy, s.size());
      stats.min_occupancy = std::min(stats.min_occupancy, s.size());
    }
    std::size_t fallbacks = 0;
    for (const auto& c : clustering) {
      ensure(c.medoids.size() == c.clusters.k, "one medoid per cluster");
      stats.medoids += c.clusters.k;
      fallbacks += c.lmethod_fallback ? 1 : 0;
    }
    stats.k_estimate = config.final_k.value_or(stats.medoids);
    result.peak_occupancy = std::max(result.peak_occupancy, stats.max_occupancy);
    if (fallbacks > 0)
      result.warnings.push_back("iteration " + std::to_string(i) + ": " +
                                std::to_string(fallbacks) +
                                " subset(s) too small for the L method, K_p set to 2");
    if (cap != 0) ensure(stats.max_occupancy <= config.beta, "subset occupancy within beta");

    // The flat clustering finalize would return at this point.
    Finalized current = finalize(dataset, subsets, clustering, stats.k_estimate, config);
    if (dataset.has_labels()) stats.f_measure = score(dataset, current.assignment);

    p_history.push_back(subsets.size());
    bool converged = i + 1 >= config.max_iters;
    if (i > 2 && p_history.size() > config.convergence_window) {
      const auto window_begin = p_history.end() - static_cast<std::ptrdiff_t>(config.convergence_window) - 1;
      converged = converged || std::all_of(window_begin, p_history.end(),
                                           [&](std::size_t p) { return p == p_history.back(); });
    }
    if (converged) {
      if (current.clamped)
        result.warnings.push_back("final K " + std::to_string(stats.k_estimate) +
                                  " exceeds the medoid count; clamped to " +
                                  std::to_string(current.k));
      result.assignment = std::move(current.assignment);
      result.final_k = current.k;
      stats.seconds = std::chrono::duration<double>(Clock::now() - started).count();
      result.history.push_back(stats);
      break;
    }

    const MedoidGrouping grouping =
        regroup_medoids(dataset, all_medoids(clustering), subsets.size(), config);
    if (grouping.degenerate)
      result.warnings.push_back("iteration " + std::to_string(i) + ": fewer medoids (" +
                                std::to_string(stats.medoids) + ") than subsets (" +
                                std::to_string(subsets.size()) + ")");
    std::vector<std::size_t> unit_of;
    if (config.manage_size && config.split_by_cluster) {
      unit_of.resize(dataset.size());
      std::size_t offset = 0;
      for (std::size_t p = 0; p < subsets.size(); ++p) {
        for (std::size_t j = 0; j < subsets[p].size(); ++j)
          unit_of[subsets[p].position(j)] = offset + clustering[p].clusters.labels[j];
        offset += clustering[p].clusters.k;
      }
    }
    subsets = refine(dataset, subsets, clustering, grouping.groups);
    if (config.manage_size)
      subsets = split(subsets, config.beta, derive_seed(config.seed, 1, i), unit_of);

    stats.seconds = std::chrono::duration<double>(Clock::now() - started).count();
    result.history.push_back(stats);
  }
  return result;
}

MahcResult run_ahc_baseline(const Dataset& dataset, const MahcConfig& config) {
  config.validate();
  const auto started = Clock::now();
  const std::size_t n = dataset.size();
  MahcResult result;
  result.peak_occupancy = n;

  std::size_t k = 1;
  if (n == 1) {
    result.assignment.labels = {0};
    result.assignment.k = 1;
  } else {
    const SubsetView all = SubsetView::all(dataset);
    const Dendrogram dendrogram =
        ward_ahc(build_matrix(all, make_distance(config), config.workers), config.ward);
    if (config.final_k) {
      k = *config.final_k;
    } else {
      const LMethodResult knee = l_method(merge_height_curve(dendrogram), config.lmethod);
      if (knee.fallback) result.warnings.push_back("curve too short for the L method, K set to 2");
      k = knee.clusters;
    }
    if (k > n) {
      result.warnings.push_back("K " + std::to_string(k) + " exceeds N; clamped to " +
                                std::to_string(n));
      k = n;
    }
    result.assignment = cut(dendrogram, k);
  }
  result.final_k = result.assignment.k;

  IterationStats stats;
  stats.subsets = 1;
  stats.max_occupancy = stats.min_occupancy = n;
  stats.medoids = stats.k_estimate = result.final_k;
  if (dataset.has_labels()) stats.f_measure = score(dataset, result.assignment);
  stats.seconds = std::chrono::duration<double>(Clock::now() - started).count();
  result.history.push_back(stats);
  return result;
}

}  // namespace mahc
