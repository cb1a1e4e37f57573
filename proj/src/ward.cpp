// SPDX-License-Identifier: Apache-2.0
#include "mahc/ward.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "mahc/error.hpp"

namespace mahc {

Dendrogram::Dendrogram(std::size_t leaves, std::vector<Merge> merges)
    : leaves_(leaves), merges_(std::move(merges)) {
  ensure(leaves_ >= 1, "dendrogram needs at least one leaf");
  ensure(merges_.size() == leaves_ - 1, "dendrogram needs n-1 merges");
  std::vector<std::size_t> sizes(2 * leaves_ - 1, 1);
  std::vector<bool> used(2 * leaves_ - 1, false);
  for (std::size_t k = 0; k < merges_.size(); ++k) {
    const Merge& m = merges_[k];
    const std::size_t node = leaves_ + k;
    ensure(m.left < m.right && m.right < node, "merge children must precede the merge");
    ensure(!used[m.left] && !used[m.right], "node used as a child twice");
    used[m.left] = used[m.right] = true;
    sizes[node] = sizes[m.left] + sizes[m.right];
    ensure(m.size == sizes[node], "merge size inconsistent with children");
    ensure(m.height >= 0.0, "negative merge height");
    ensure(k == 0 || m.height >= merges_[k - 1].height, "merge heights must be non-decreasing");
  }
}

std::vector<std::vector<std::size_t>> Assignment::groups() const {
  std::vector<std::vector<std::size_t>> out(k);
  for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]].push_back(i);
  return out;
}

namespace {

struct RawMerge {
  std::size_t a;  // a leaf of the first cluster
  std::size_t b;  // a leaf of the second cluster
  double height;
};

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
};

}  // namespace

Dendrogram ward_ahc(CondensedMatrix matrix, const WardOptions& options) {
  const std::size_t n = matrix.n();
  if (n < 2) fail(ErrorKind::InvalidArgument, "ward_ahc: need at least 2 objects");
  if (options.square_input)
    for (double& v : matrix.values()) v *= v;

  auto dist = [&](std::size_t x, std::size_t y) -> double& {
    return x < y ? matrix.at_upper(x, y) : matrix.at_upper(y, x);
  };

  std::vector<double> members(n, 1.0);
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), 0);
  // Index of the raw merge that last formed the cluster held in each slot.
  std::vector<std::size_t> formed_by(n, SIZE_MAX);

  std::vector<RawMerge> raw;
  raw.reserve(n - 1);
  std::vector<double> effective;  // heights lifted to be >= every child merge
  effective.reserve(n - 1);
  std::vector<std::size_t> chain;
  chain.reserve(n);

  while (active.size() > 1) {
    if (chain.empty()) chain.push_back(active.front());
    std::size_t x = 0, y = 0;
    double best = 0.0;
    for (;;) {
      x = chain.back();
      // On a tie the previous chain element wins, which guarantees that the
      // chain terminates; otherwise the smallest slot wins.
      const bool has_prev = chain.size() >= 2;
      y = has_prev ? chain[chain.size() - 2] : SIZE_MAX;
      best = has_prev ? dist(x, y) : 0.0;
      for (std::size_t z : active) {
        if (z == x) continue;
        const double d = dist(x, z);
        if (y == SIZE_MAX || d < best) {
          best = d;
          y = z;
        }
      }
      if (has_prev && y == chain[chain.size() - 2]) break;
      chain.push_back(y);
    }
    chain.pop_back();
    chain.pop_back();

    const std::size_t keep = std::min(x, y);
    const std::size_t drop = std::max(x, y);
    const double n_keep = members[keep];
    const double n_drop = members[drop];
    for (std::size_t z : active) {
      if (z == keep || z == drop) continue;
      const double nz = members[z];
      double& target = dist(z, keep);
      target = ((n_keep + nz) * target + (n_drop + nz) * dist(z, drop) - nz * best) /
               (n_keep + n_drop + nz);
    }

    double lifted = best;
    if (formed_by[keep] != SIZE_MAX) lifted = std::max(lifted, effective[formed_by[keep]]);
    if (formed_by[drop] != SIZE_MAX) lifted = std::max(lifted, effective[formed_by[drop]]);
    raw.push_back({keep, drop, best});
    effective.push_back(lifted);
    formed_by[keep] = raw.size() - 1;
    members[keep] = n_keep + n_drop;
    active.erase(std::find(active.begin(), active.end(), drop));
  }

  // Reducibility makes the chain's merge set equal to the greedy one; order it
  // by height to recover the greedy sequence.
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return effective[l] < effective[r]; });

  DisjointSets sets(n);
  std::vector<std::size_t> node_of(n);
  std::vector<std::size_t> size_of(n, 1);
  std::iota(node_of.begin(), node_of.end(), 0);
  std::vector<Merge> merges;
  merges.reserve(n - 1);
  for (std::size_t r : order) {
    const std::size_t ra = sets.find(raw[r].a);
    const std::size_t rb = sets.find(raw[r].b);
    const std::size_t na = node_of[ra];
    const std::size_t nb = node_of[rb];
    const std::size_t size = size_of[ra] + size_of[rb];
    merges.push_back({std::min(na, nb), std::max(na, nb), effective[r], size});
    sets.parent[rb] = ra;
    node_of[ra] = n + merges.size() - 1;
    size_of[ra] = size;
  }
  return Dendrogram(n, std::move(merges));
}

Assignment cut(const Dendrogram& dendrogram, std::size_t k) {
  const std::size_t n = dendrogram.leaves();
  if (k < 1 || k > n)
    fail(ErrorKind::InvalidArgument, "cut: k=" + std::to_string(k) + " outside [1, " +
                                         std::to_string(n) + "]");
  // Node ids to union-find over leaves: each internal node is represented by
  // one of its leaves.
  std::vector<std::size_t> leaf_of(2 * n - 1);
  std::iota(leaf_of.begin(), leaf_of.begin() + static_cast<std::ptrdiff_t>(n), 0);
  DisjointSets sets(n);
  const auto& merges = dendrogram.merges();
  for (std::size_t m = 0; m < n - k; ++m) {
    const std::size_t a = sets.find(leaf_of[merges[m].left]);
    const std::size_t b = sets.find(leaf_of[merges[m].right]);
    sets.parent[b] = a;
    leaf_of[n + m] = a;
  }

  Assignment out;
  out.labels.assign(n, SIZE_MAX);
  std::vector<std::size_t> id_of_root(n, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.find(i);
    if (id_of_root[root] == SIZE_MAX) id_of_root[root] = out.k++;
    out.labels[i] = id_of_root[root];
  }
  ensure(out.k == k, "cut produced the wrong number of clusters");
  return out;
}

EvaluationCurve merge_height_curve(const Dendrogram& dendrogram) {
  const auto& merges = dendrogram.merges();
  EvaluationCurve curve;
  curve.heights.reserve(merges.size());
  // Going from c-1 to c clusters undoes merge number n-c.
  for (std::size_t m = merges.size(); m-- > 0;) curve.heights.push_back(merges[m].height);
  return curve;
}

void write_dendrogram_csv(std::ostream& out, const Dendrogram& dendrogram) {
  const auto precision = out.precision(17);
  out << "left,right,height,size\n";
  for (const Merge& m : dendrogram.merges())
    out << m.left << ',' << m.right << ',' << m.height << ',' << m.size << '\n';
  out.precision(precision);
}

}  // namespace mahc
