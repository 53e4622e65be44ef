#include "farofangs/matrix.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "farofangs/error.hpp"

namespace farofangs {

namespace {

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

// Mask of the valid bits in the last word of a column.
std::uint64_t tail_mask(std::size_t n) {
  const std::size_t r = n & 63;
  return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
}

// True when column a of x sorts before column b of y in descending
// top-down binary order.
bool column_greater(std::span<const std::uint64_t> a,
                    std::span<const std::uint64_t> b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    const std::uint64_t diff = a[w] ^ b[w];
    if (diff != 0) {
      // Lowest differing bit is the topmost differing row.
      return (a[w] >> std::countr_zero(diff)) & 1U;
    }
  }
  return false;
}

}  // namespace

FeatureAllocation::FeatureAllocation(std::size_t n, std::size_t k)
    : n_(n), k_(k), words_(words_for(n)), bits_(k * words_for(n), 0) {
  if (n == 0) {
    throw DimensionError("a feature allocation needs at least one row");
  }
}

FeatureAllocation FeatureAllocation::from_rows(
    const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) {
    throw DimensionError("a feature allocation needs at least one row");
  }
  const std::size_t k = rows.front().size();
  FeatureAllocation z(rows.size(), k);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != k) {
      throw DimensionError("row " + std::to_string(i + 1) + " has " +
                           std::to_string(rows[i].size()) +
                           " entries, expected " + std::to_string(k));
    }
    for (std::size_t j = 0; j < k; ++j) {
      const int v = rows[i][j];
      if (v != 0 && v != 1) {
        throw ConfigError("entry (" + std::to_string(i + 1) + ", " +
                          std::to_string(j + 1) + ") is " + std::to_string(v) +
                          "; entries must be 0 or 1");
      }
      if (v == 1) z.set(i, j, true);
    }
  }
  return z;
}

std::size_t FeatureAllocation::column_ones(std::size_t j) const noexcept {
  std::size_t total = 0;
  for (auto w : column(j)) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool FeatureAllocation::column_is_zero(std::size_t j) const noexcept {
  const auto col = column(j);
  return std::all_of(col.begin(), col.end(),
                     [](std::uint64_t w) { return w == 0; });
}

std::size_t FeatureAllocation::ones() const noexcept {
  std::size_t total = 0;
  for (auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

void FeatureAllocation::append_column(const FeatureAllocation& other,
                                      std::size_t j) {
  require_same_rows(*this, other);
  const auto src = other.column(j);
  bits_.insert(bits_.end(), src.begin(), src.end());
  ++k_;
}

std::vector<std::vector<int>> FeatureAllocation::to_rows() const {
  std::vector<std::vector<int>> out(n_, std::vector<int>(k_, 0));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < k_; ++j) out[i][j] = get(i, j) ? 1 : 0;
  return out;
}

SampleSet::SampleSet(std::vector<FeatureAllocation> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty()) {
    throw ConfigError("a sample set needs at least one sample");
  }
  const std::size_t n = samples_.front().rows();
  for (std::size_t b = 0; b < samples_.size(); ++b) {
    if (samples_[b].rows() != n) {
      throw DimensionError("sample " + std::to_string(b + 1) + " has " +
                           std::to_string(samples_[b].rows()) +
                           " rows but sample 1 has " + std::to_string(n));
    }
    k_max_ = std::max(k_max_, samples_[b].cols());
  }
}

FeatureAllocation left_order(const FeatureAllocation& z) {
  std::vector<std::size_t> order;
  order.reserve(z.cols());
  for (std::size_t j = 0; j < z.cols(); ++j)
    if (!z.column_is_zero(j)) order.push_back(j);
  std::stable_sort(order.begin(), order.end(),
                   [&z](std::size_t a, std::size_t b) {
                     return column_greater(z.column(a), z.column(b));
                   });
  return permute_columns(z, order);
}

AdjacencyMatrix adjacency(const FeatureAllocation& z) {
  const std::size_t n = z.rows();
  AdjacencyMatrix out(n);
  for (std::size_t j = 0; j < z.cols(); ++j) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (z.get(i, j)) members.push_back(i);
    for (auto r : members)
      for (auto c : members) ++out(r, c);
  }
  return out;
}

FeatureAllocation augment(const FeatureAllocation& z, std::size_t k_target) {
  if (k_target < z.cols()) {
    throw DimensionError("cannot augment a matrix with " +
                         std::to_string(z.cols()) + " columns down to " +
                         std::to_string(k_target));
  }
  FeatureAllocation out(z.rows(), k_target);
  for (std::size_t j = 0; j < z.cols(); ++j)
    std::copy(z.column(j).begin(), z.column(j).end(), out.column(j).begin());
  return out;
}

FeatureAllocation permute_columns(const FeatureAllocation& z,
                                  std::span<const std::size_t> order) {
  FeatureAllocation out(z.rows(), order.size());
  for (std::size_t j = 0; j < order.size(); ++j) {
    if (order[j] >= z.cols()) {
      throw DimensionError("column index " + std::to_string(order[j]) +
                           " out of range for " + std::to_string(z.cols()) +
                           " columns");
    }
    const auto src = z.column(order[j]);
    std::copy(src.begin(), src.end(), out.column(j).begin());
  }
  return out;
}

FeatureAllocation strip_zero_columns(const FeatureAllocation& z) {
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < z.cols(); ++j)
    if (!z.column_is_zero(j)) keep.push_back(j);
  return permute_columns(z, keep);
}

FeatureAllocation complement(const FeatureAllocation& z) {
  FeatureAllocation out = z;
  const std::uint64_t last = tail_mask(z.rows());
  for (std::size_t j = 0; j < z.cols(); ++j) {
    auto col = out.column(j);
    for (auto& w : col) w = ~w;
    col.back() &= last;
  }
  return out;
}

void require_same_rows(const FeatureAllocation& x,
                       const FeatureAllocation& y) {
  if (x.rows() != y.rows()) {
    throw DimensionError("row counts differ: " + std::to_string(x.rows()) +
                         " vs " + std::to_string(y.rows()));
  }
}

}  // namespace farofangs
