// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mahc {

/// One variable-length sequence of fixed-dimension feature vectors.
/// Frames are stored contiguously, frame t occupying [t*dim, (t+1)*dim).
struct Segment {
  std::int64_t id = 0;
  std::optional<std::string> label;
  std::size_t dim = 0;
  std::vector<double> frames;

  Segment() = default;
  Segment(std::int64_t id, std::size_t dim, std::vector<double> frames,
          std::optional<std::string> label = std::nullopt);

  /// Builds a segment from a list of frames; every frame must share one size.
  static Segment from_frames(std::int64_t id, const std::vector<std::vector<double>>& frames,
                             std::optional<std::string> label = std::nullopt);

  std::size_t length() const noexcept { return dim == 0 ? 0 : frames.size() / dim; }
  std::span<const double> frame(std::size_t t) const noexcept {
    return {frames.data() + t * dim, dim};
  }
};

/// Immutable, validated collection of segments sharing one dimension.
/// Labels, when present, are interned to dense class indices in order of
/// first appearance.
class Dataset {
 public:
  /// Validates and takes ownership. Throws Error(Data) on an empty list,
  /// dimension mismatch, empty segment, duplicate id, or partial labelling.
  static Dataset make(std::vector<Segment> segments);

  std::size_t size() const noexcept { return segments_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const Segment& operator[](std::size_t i) const noexcept { return segments_[i]; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }

  bool has_labels() const noexcept { return !class_of_.empty(); }
  std::size_t class_count() const noexcept { return class_names_.size(); }
  /// Dense class index per segment position; empty when unlabelled.
  const std::vector<std::size_t>& class_indices() const noexcept { return class_of_; }
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }

  /// Position of the segment with this id, if any.
  std::optional<std::size_t> position_of(std::int64_t id) const;

 private:
  std::vector<Segment> segments_;
  std::size_t dim_ = 0;
  std::vector<std::size_t> class_of_;
  std::vector<std::string> class_names_;
};

/// Non-owning, index-based view onto a subset of a dataset. Members are kept
/// in strictly increasing dataset order.
class SubsetView {
 public:
  SubsetView() = default;

  /// Throws Error(InvalidArgument) on an out-of-range or duplicate index.
  static SubsetView make(const Dataset& dataset, std::vector<std::size_t> indices);
  static SubsetView all(const Dataset& dataset);

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t position(std::size_t k) const noexcept { return members_[k]; }
  const Segment& operator[](std::size_t k) const noexcept { return (*dataset_)[members_[k]]; }
  const std::vector<std::size_t>& members() const noexcept { return members_; }
  const Dataset& dataset() const noexcept { return *dataset_; }

 private:
  const Dataset* dataset_ = nullptr;
  std::vector<std::size_t> members_;
};

}  // namespace mahc
