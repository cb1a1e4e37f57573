// SPDX-License-Identifier: Apache-2.0
#include "mahc/dataset.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "mahc/error.hpp"

namespace mahc {

Segment::Segment(std::int64_t id, std::size_t dim, std::vector<double> frames,
                 std::optional<std::string> label)
    : id(id), label(std::move(label)), dim(dim), frames(std::move(frames)) {
  if (dim == 0) fail(ErrorKind::Data, "segment " + std::to_string(id) + ": dimension is zero");
  if (this->frames.empty()) fail(ErrorKind::Data, "segment " + std::to_string(id) + ": no frames");
  if (this->frames.size() % dim != 0)
    fail(ErrorKind::Data, "segment " + std::to_string(id) + ": ragged frame data");
}

Segment Segment::from_frames(std::int64_t id, const std::vector<std::vector<double>>& frames,
                             std::optional<std::string> label) {
  if (frames.empty()) fail(ErrorKind::Data, "segment " + std::to_string(id) + ": no frames");
  const std::size_t dim = frames.front().size();
  std::vector<double> flat;
  flat.reserve(dim * frames.size());
  for (const auto& f : frames) {
    if (f.size() != dim)
      fail(ErrorKind::Data, "segment " + std::to_string(id) + ": dimension mismatch between frames");
    flat.insert(flat.end(), f.begin(), f.end());
  }
  return Segment(id, dim, std::move(flat), std::move(label));
}

Dataset Dataset::make(std::vector<Segment> segments) {
  if (segments.empty()) fail(ErrorKind::Data, "dataset is empty");

  Dataset ds;
  ds.dim_ = segments.front().dim;
  const bool labelled = segments.front().label.has_value();
  std::unordered_set<std::int64_t> ids;
  std::unordered_map<std::string, std::size_t> class_index;

  for (const auto& s : segments) {
    if (s.dim != ds.dim_)
      fail(ErrorKind::Data, "dimension mismatch: segment " + std::to_string(s.id) + " has " +
                                std::to_string(s.dim) + ", expected " + std::to_string(ds.dim_));
    if (s.dim == 0 || s.frames.empty() || s.frames.size() % s.dim != 0)
      fail(ErrorKind::Data, "segment " + std::to_string(s.id) + " has no complete frames");
    if (!ids.insert(s.id).second) fail(ErrorKind::Data, "duplicate id " + std::to_string(s.id));
    if (s.label.has_value() != labelled)
      fail(ErrorKind::Data, "partial labelling: segment " + std::to_string(s.id) +
                                (labelled ? " has no label" : " has a label"));
    if (labelled) {
      auto [it, inserted] = class_index.try_emplace(*s.label, ds.class_names_.size());
      if (inserted) ds.class_names_.push_back(*s.label);
      ds.class_of_.push_back(it->second);
    }
  }
  ds.segments_ = std::move(segments);
  return ds;
}

std::optional<std::size_t> Dataset::position_of(std::int64_t id) const {
  for (std::size_t i = 0; i < segments_.size(); ++i)
    if (segments_[i].id == id) return i;
  return std::nullopt;
}

SubsetView SubsetView::make(const Dataset& dataset, std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= dataset.size())
      fail(ErrorKind::InvalidArgument, "index " + std::to_string(indices[k]) + " out of range");
    if (k > 0 && indices[k] == indices[k - 1])
      fail(ErrorKind::InvalidArgument, "duplicate index " + std::to_string(indices[k]));
  }
  SubsetView v;
  v.dataset_ = &dataset;
  v.members_ = std::move(indices);
  return v;
}

SubsetView SubsetView::all(const Dataset& dataset) {
  std::vector<std::size_t> idx(dataset.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  SubsetView v;
  v.dataset_ = &dataset;
  v.members_ = std::move(idx);
  return v;
}

}  // namespace mahc
