// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mahc/dataset.hpp"

namespace mahc {

/// Labelled stand-in for a corpus of speech segments: L random templates,
/// each member a time-warped, jittered copy of its class template.
struct SyntheticSpec {
  std::size_t classes = 10;
  /// Class sizes fall geometrically from members_max (class 0) to
  /// members_min (class L-1). Equal values give a flat profile.
  std::size_t members_min = 20;
  std::size_t members_max = 20;
  std::size_t dim = 4;
  std::size_t length_min = 5;
  std::size_t length_max = 10;
  /// Standard deviation of per-frame Gaussian noise.
  double jitter = 0.1;
  /// Per-frame probability of a duplication or deletion, split evenly.
  double warp = 0.1;
  std::uint64_t seed = 1;
};

/// Members per class for a spec, in class order.
std::vector<std::size_t> class_size_profile(const SyntheticSpec& spec);

/// Throws Error(InvalidArgument) for L < 2, zero sizes or lengths, negative
/// jitter or warp outside [0, 1).
Dataset generate_synthetic(const SyntheticSpec& spec);

}  // namespace mahc
