// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mahc/condensed_matrix.hpp"
#include "mahc/dataset.hpp"
#include "mahc/dtw.hpp"
#include "mahc/lmethod.hpp"
#include "mahc/ward.hpp"

namespace mahc {

struct MahcConfig {
  std::size_t p0 = 1;
  /// Occupancy cap. Only enforced when manage_size is set.
  std::size_t beta = 2;
  /// Run the split step. Off reproduces plain multi-stage AHC.
  bool manage_size = true;
  /// Split along stage-one cluster boundaries instead of by single segments.
  bool split_by_cluster = false;
  std::size_t max_iters = 10;
  std::size_t convergence_window = 2;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::optional<std::size_t> final_k;
  DtwOptions dtw;
  WardOptions ward;
  LMethodOptions lmethod;

  /// Throws Error(InvalidArgument) when a field is out of range.
  void validate() const;
};

/// Snapshot of the subsets clustered during one iteration.
struct IterationStats {
  std::size_t iteration = 0;
  std::size_t subsets = 0;
  std::size_t max_occupancy = 0;
  std::size_t min_occupancy = 0;
  /// Number of medoids, S = sum of K_p.
  std::size_t medoids = 0;
  /// K that finalize would use at this point.
  std::size_t k_estimate = 0;
  double seconds = 0.0;
  std::optional<double> f_measure;
};

/// Stage-one outcome for one subset. Cluster ids index into `medoids`.
struct SubsetClustering {
  Assignment clusters;
  /// Dataset position of each cluster's medoid.
  std::vector<std::size_t> medoids;
  bool lmethod_fallback = false;
};

struct MahcResult {
  Assignment assignment;
  std::size_t final_k = 0;
  std::vector<IterationStats> history;
  std::vector<std::string> warnings;
  /// Largest subset a matrix was built for.
  std::size_t peak_occupancy = 0;
};

/// Seeded shuffle of [0, n) cut into p blocks whose sizes differ by at most
/// one, larger blocks first.
std::vector<SubsetView> initial_partition(const Dataset& dataset, std::size_t p,
                                          std::uint64_t seed);

/// Medoid of each cluster: the member with the smallest summed distance to the
/// rest of its cluster, smallest position on ties. `matrix` indexes subset
/// members.
std::vector<std::size_t> compute_medoids(const SubsetView& subset, const Assignment& clusters,
                                         const CondensedMatrix& matrix);

/// Matrix, Ward AHC, L method and cut for one subset. A subset of one object
/// yields a single cluster. K_p is capped so that the cut never separates
/// objects merged at height zero; a subset of identical segments is therefore
/// one cluster.
SubsetClustering cluster_subset(const SubsetView& subset, const MahcConfig& config,
                                std::size_t workers, std::size_t max_objects = 0);

/// cluster_subset over every subset, fanned out over config.workers. Results
/// are ordered by subset index.
std::vector<SubsetClustering> stage_one(const std::vector<SubsetView>& subsets,
                                        const MahcConfig& config, std::size_t max_objects = 0);

struct MedoidGrouping {
  Assignment groups;
  bool degenerate = false;  // fewer medoids than requested groups
};

/// Ward AHC over the medoids' own DTW matrix, cut at `target_groups`.
MedoidGrouping regroup_medoids(const Dataset& dataset, const std::vector<std::size_t>& medoids,
                               std::size_t target_groups, const MahcConfig& config);

/// Moves every segment to the subset numbered by its cluster medoid's group.
/// `groups` is indexed by medoid in (subset, cluster) order.
std::vector<SubsetView> refine(const Dataset& dataset,
                               const std::vector<SubsetView>& subsets,
                               const std::vector<SubsetClustering>& clustering,
                               const Assignment& groups);

/// Evenly subdivides every subset above beta into ceil(s / beta) parts of
/// sizes ceil(s/q) or floor(s/q). Other subsets pass through unchanged, in
/// order.
///
/// `unit_of` optionally maps dataset position to a unit id (the stage-one
/// cluster a segment came from). Members are laid out unit by unit, units in
/// seeded random order, before being cut into blocks, so a unit is only
/// divided where it straddles a block boundary. Empty: every member is its
/// own unit, i.e. a plain seeded shuffle.
std::vector<SubsetView> split(const std::vector<SubsetView>& subsets, std::size_t beta,
                              std::uint64_t seed, std::span<const std::size_t> unit_of = {});

struct Finalized {
  Assignment assignment;
  std::size_t k = 0;
  bool clamped = false;
};

/// Clusters the medoids into k groups and lets every segment inherit the group
/// of its stage-one cluster's medoid. k > S is clamped to S.
Finalized finalize(const Dataset& dataset, const std::vector<SubsetView>& subsets,
                   const std::vector<SubsetClustering>& clustering, std::size_t k,
                   const MahcConfig& config);

/// Iterative multi-stage AHC, with the split step when config.manage_size.
MahcResult run_mahc(const Dataset& dataset, const MahcConfig& config);

/// Single AHC over the whole dataset; K from config.final_k or the L method.
MahcResult run_ahc_baseline(const Dataset& dataset, const MahcConfig& config);

/// The DTW pair distance configured by `config`.
PairDistance make_distance(const MahcConfig& config);

}  // namespace mahc
