#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace farofangs {

/// An n x k binary matrix: rows are items, columns are features.
///
/// Storage is column-major and bit-packed (one run of 64-bit words per
/// column, unused high bits kept at zero) so that column-vs-column
/// comparisons reduce to AND + popcount. k == 0 is the empty allocation.
class FeatureAllocation {
 public:
  FeatureAllocation() = default;
  /// All-zero n x k matrix. n must be at least 1.
  FeatureAllocation(std::size_t n, std::size_t k);

  /// Builds from row-major 0/1 entries. Every row must have the same
  /// length; any value other than 0 or 1 is rejected.
  static FeatureAllocation from_rows(
      const std::vector<std::vector<int>>& rows);

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return k_; }
  std::size_t words_per_column() const noexcept { return words_; }

  bool get(std::size_t i, std::size_t j) const noexcept {
    return (bits_[j * words_ + (i >> 6)] >> (i & 63)) & 1U;
  }
  void set(std::size_t i, std::size_t j, bool value) noexcept {
    auto& w = bits_[j * words_ + (i >> 6)];
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    w = value ? (w | mask) : (w & ~mask);
  }
  void flip(std::size_t i, std::size_t j) noexcept {
    bits_[j * words_ + (i >> 6)] ^= std::uint64_t{1} << (i & 63);
  }

  std::span<const std::uint64_t> column(std::size_t j) const noexcept {
    return {bits_.data() + j * words_, words_};
  }
  std::span<std::uint64_t> column(std::size_t j) noexcept {
    return {bits_.data() + j * words_, words_};
  }

  /// Number of ones in column j.
  std::size_t column_ones(std::size_t j) const noexcept;
  bool column_is_zero(std::size_t j) const noexcept;
  /// Total number of ones.
  std::size_t ones() const noexcept;

  /// Appends a copy of column j of `other` (which must have the same n).
  void append_column(const FeatureAllocation& other, std::size_t j);

  std::vector<std::vector<int>> to_rows() const;

  friend bool operator==(const FeatureAllocation&,
                         const FeatureAllocation&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// B >= 1 allocations over a common set of n items.
class SampleSet {
 public:
  explicit SampleSet(std::vector<FeatureAllocation> samples);

  std::size_t size() const noexcept { return samples_.size(); }
  std::size_t rows() const noexcept { return samples_.front().rows(); }
  std::size_t k_max() const noexcept { return k_max_; }

  const FeatureAllocation& operator[](std::size_t b) const {
    return samples_[b];
  }
  const std::vector<FeatureAllocation>& samples() const noexcept {
    return samples_;
  }
  auto begin() const noexcept { return samples_.begin(); }
  auto end() const noexcept { return samples_.end(); }

  friend bool operator==(const SampleSet&, const SampleSet&) = default;

 private:
  std::vector<FeatureAllocation> samples_;
  std::size_t k_max_ = 0;
};

/// Dense n x n count matrix; entry (i, j) is the number of features shared
/// by items i and j.
class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(std::size_t n) : n_(n), counts_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const noexcept {
    return counts_[i * n_ + j];
  }
  std::uint32_t& operator()(std::size_t i, std::size_t j) noexcept {
    return counts_[i * n_ + j];
  }

  friend bool operator==(const AdjacencyMatrix&,
                         const AdjacencyMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<std::uint32_t> counts_;
};

/// Canonical left-ordered form: columns sorted descending by their binary
/// value read top-down (row 0 is the most significant bit), stable among
/// duplicates, all-zero columns dropped.
FeatureAllocation left_order(const FeatureAllocation& z);

/// Z Z'.
AdjacencyMatrix adjacency(const FeatureAllocation& z);

/// Appends (k_target - k) zero columns. Throws DimensionError when
/// k_target < z.cols().
FeatureAllocation augment(const FeatureAllocation& z, std::size_t k_target);

/// Column j of the result is column order[j] of z. `order` may be any
/// sequence of valid column indices (a permutation in the usual case).
FeatureAllocation permute_columns(const FeatureAllocation& z,
                                  std::span<const std::size_t> order);

/// Drops all-zero columns, keeping the remaining columns in place order.
FeatureAllocation strip_zero_columns(const FeatureAllocation& z);

/// 1 - z, entrywise.
FeatureAllocation complement(const FeatureAllocation& z);

// Throws DimensionError unless both have the same number of rows.
void require_same_rows(const FeatureAllocation& x, const FeatureAllocation& y);

}  // namespace farofangs
