// SPDX-License-Identifier: Apache-2.0
#include "mahc/synthetic.hpp"

#include <cmath>
#include <random>

#include "mahc/error.hpp"

namespace mahc {

std::vector<std::size_t> class_size_profile(const SyntheticSpec& spec) {
  std::vector<std::size_t> sizes(spec.classes);
  if (spec.classes == 0) return sizes;
  const double hi = static_cast<double>(spec.members_max);
  const double lo = static_cast<double>(spec.members_min);
  for (std::size_t l = 0; l < spec.classes; ++l) {
    const double t = spec.classes == 1 ? 0.0
                                       : static_cast<double>(l) / static_cast<double>(spec.classes - 1);
    sizes[l] = static_cast<std::size_t>(std::llround(hi * std::pow(lo / hi, t)));
  }
  return sizes;
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
  auto invalid = [](const std::string& why) { fail(ErrorKind::InvalidArgument, "synthetic spec: " + why); };
  if (spec.classes < 2) invalid("need at least 2 classes");
  if (spec.members_min < 1 || spec.members_max < spec.members_min)
    invalid("need 1 <= members_min <= members_max");
  if (spec.dim < 1) invalid("dim must be positive");
  if (spec.length_min < 1 || spec.length_max < spec.length_min)
    invalid("need 1 <= length_min <= length_max");
  if (!(spec.jitter >= 0.0)) invalid("jitter must be non-negative");
  if (!(spec.warp >= 0.0 && spec.warp < 1.0)) invalid("warp must lie in [0, 1)");

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> length(spec.length_min, spec.length_max);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  // Templates are smoothed Gaussian walks so neighbouring frames correlate the
  // way spectral features do.
  std::vector<std::vector<double>> templates(spec.classes);
  for (auto& tpl : templates) {
    const std::size_t n = length(rng);
    tpl.resize(n * spec.dim);
    for (std::size_t d = 0; d < spec.dim; ++d) {
      double level = unit(rng);
      for (std::size_t t = 0; t < n; ++t) {
        level = 0.5 * level + unit(rng);
        tpl[t * spec.dim + d] = level;
      }
    }
  }

  const auto sizes = class_size_profile(spec);
  std::vector<Segment> segments;
  std::int64_t next_id = 0;
  for (std::size_t l = 0; l < spec.classes; ++l) {
    const auto& tpl = templates[l];
    const std::size_t n = tpl.size() / spec.dim;
    for (std::size_t m = 0; m < sizes[l]; ++m) {
      std::vector<double> frames;
      frames.reserve(tpl.size() + spec.dim * 2);
      auto emit = [&](std::size_t t) {
        for (std::size_t d = 0; d < spec.dim; ++d) {
          const double noise = spec.jitter > 0.0 ? spec.jitter * unit(rng) : 0.0;
          frames.push_back(tpl[t * spec.dim + d] + noise);
        }
      };
      for (std::size_t t = 0; t < n; ++t) {
        const double u = spec.warp > 0.0 ? coin(rng) : 1.0;
        if (u < spec.warp / 2.0) continue;  // deletion
        emit(t);
        if (u < spec.warp) emit(t);  // duplication
      }
      if (frames.empty()) emit(0);
      segments.emplace_back(next_id++, spec.dim, std::move(frames), "c" + std::to_string(l));
    }
  }
  return Dataset::make(std::move(segments));
}

}  // namespace mahc
