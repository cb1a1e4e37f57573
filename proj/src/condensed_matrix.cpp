// SPDX-License-Identifier: Apache-2.0
#include "mahc/condensed_matrix.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include "mahc/error.hpp"
#include "parallel.hpp"

namespace mahc {

std::size_t condensed_index(std::size_t i, std::size_t j, std::size_t n) {
  if (i >= j || j >= n)
    fail(ErrorKind::InvalidArgument, "condensed_index: need i < j < n, got (" + std::to_string(i) +
                                         ", " + std::to_string(j) + ", " + std::to_string(n) + ")");
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

CondensedMatrix::CondensedMatrix(std::size_t n) : n_(n), values_(pair_count(n), 0.0) {}

CondensedMatrix::CondensedMatrix(std::size_t n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  if (values_.size() != pair_count(n))
    fail(ErrorKind::InvalidArgument, "condensed matrix for n=" + std::to_string(n) + " needs " +
                                         std::to_string(pair_count(n)) + " values, got " +
                                         std::to_string(values_.size()));
}

double CondensedMatrix::get(std::size_t i, std::size_t j) const {
  if (i == j) fail(ErrorKind::InvalidArgument, "diagonal access (" + std::to_string(i) + ")");
  return i < j ? values_[condensed_index(i, j, n_)] : values_[condensed_index(j, i, n_)];
}

void CondensedMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i == j) fail(ErrorKind::InvalidArgument, "diagonal access (" + std::to_string(i) + ")");
  values_[i < j ? condensed_index(i, j, n_) : condensed_index(j, i, n_)] = value;
}

namespace {

// Inverse of condensed_index: the (i, j) pair stored at flat position k.
std::pair<std::size_t, std::size_t> pair_at(std::size_t k, std::size_t n) {
  std::size_t i = 0;
  std::size_t row_start = 0;
  // Closed-form estimate, then corrected for rounding.
  const double nn = static_cast<double>(n);
  const double guess =
      std::floor(nn - 0.5 - std::sqrt((nn - 0.5) * (nn - 0.5) - 2.0 * static_cast<double>(k)));
  if (guess > 0) i = std::min(static_cast<std::size_t>(guess), n - 2);
  row_start = i * n - i * (i + 1) / 2;
  while (row_start > k) {
    --i;
    row_start = i * n - i * (i + 1) / 2;
  }
  while (row_start + (n - i - 1) <= k) {
    row_start += n - i - 1;
    ++i;
  }
  return {i, i + 1 + (k - row_start)};
}

}  // namespace

CondensedMatrix build_matrix(const SubsetView& view, const PairDistance& distance,
                             std::size_t workers, std::size_t max_objects) {
  const std::size_t n = view.size();
  if (n < 2) fail(ErrorKind::InvalidArgument, "build_matrix: subset needs at least 2 objects");
  if (max_objects != 0 && n > max_objects)
    fail(ErrorKind::Internal, "build_matrix: subset of " + std::to_string(n) +
                                  " objects exceeds the cap of " + std::to_string(max_objects));

  CondensedMatrix matrix(n);
  auto& values = matrix.values();
  const std::size_t total = values.size();
  const std::size_t chunks = std::max<std::size_t>(1, std::min(workers, total));

  detail::parallel_for(chunks, chunks, [&](std::size_t c) {
    const std::size_t begin = total * c / chunks;
    const std::size_t end = total * (c + 1) / chunks;
    if (begin == end) return;
    auto [i, j] = pair_at(begin, n);
    for (std::size_t k = begin; k < end; ++k) {
      double d = 0.0;
      try {
        d = distance(view[i], view[j]);
      } catch (const Error& e) {
        throw Error(e.kind(), "distance(" + std::to_string(view[i].id) + ", " +
                                  std::to_string(view[j].id) + "): " + e.what());
      } catch (const std::exception& e) {
        throw Error(ErrorKind::Internal, "distance(" + std::to_string(view[i].id) + ", " +
                                             std::to_string(view[j].id) + "): " + e.what());
      }
      if (!(d >= 0.0))
        throw Error(ErrorKind::Data, "distance(" + std::to_string(view[i].id) + ", " +
                                         std::to_string(view[j].id) + ") is negative or NaN");
      values[k] = d;
      if (++j == n) {
        ++i;
        j = i + 1;
      }
    }
  });
  return matrix;
}

namespace {

constexpr std::array<char, 8> kMagic{'M', 'A', 'H', 'C', 'C', 'M', '0', '1'};

template <typename T>
T to_little_endian(T v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
}

template <typename T>
void put(std::ostream& out, T v) {
  v = to_little_endian(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T take(std::istream& in) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
    fail(ErrorKind::Data, "matrix file truncated");
  return to_little_endian(v);
}

}  // namespace

void write_matrix(std::ostream& out, const CondensedMatrix& matrix) {
  out.write(kMagic.data(), kMagic.size());
  put<std::uint64_t>(out, matrix.n());
  put<std::uint64_t>(out, matrix.size());
  for (double v : matrix.values()) put(out, v);
  if (!out) fail(ErrorKind::Data, "failed to write matrix");
}

CondensedMatrix read_matrix(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic)
    fail(ErrorKind::Data, "not a condensed matrix file (bad magic)");
  const auto n = take<std::uint64_t>(in);
  const auto count = take<std::uint64_t>(in);
  if (count != pair_count(n)) fail(ErrorKind::Data, "matrix header count does not match n");
  std::vector<double> values(count);
  for (auto& v : values) v = take<double>(in);
  return CondensedMatrix(n, std::move(values));
}

}  // namespace mahc
