#include "farofangs/hamming.hpp"

#include <bit>
#include <string>

#include "farofangs/error.hpp"

namespace farofangs {

LossParams::LossParams(double a) : a_(a) {
  if (!(a > 0.0 && a < 2.0)) {
    throw ConfigError("penalty a must lie in (0, 2), got " +
                      std::to_string(a));
  }
}

DisagreementCounts count_disagreements(const FeatureAllocation& x,
                                       const FeatureAllocation& y) {
  require_same_rows(x, y);
  if (x.cols() != y.cols()) {
    throw DimensionError("column counts differ: " + std::to_string(x.cols()) +
                         " vs " + std::to_string(y.cols()));
  }
  DisagreementCounts out;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    const auto cx = x.column(j);
    const auto cy = y.column(j);
    for (std::size_t w = 0; w < cx.size(); ++w) {
      out.first_only += std::popcount(cx[w] & ~cy[w]);
      out.second_only += std::popcount(~cx[w] & cy[w]);
    }
  }
  return out;
}

double gen_hamming(const FeatureAllocation& x, const FeatureAllocation& y,
                   const LossParams& p) {
  return count_disagreements(x, y).value(p);
}

CostMatrix CostMatrix::from_rows(
    const std::vector<std::vector<double>>& rows) {
  CostMatrix c(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw DimensionError("cost matrix is not square: row " +
                           std::to_string(i + 1) + " has " +
                           std::to_string(rows[i].size()) + " entries");
    }
    for (std::size_t j = 0; j < rows.size(); ++j) c(i, j) = rows[i][j];
  }
  return c;
}

void PairCounts::compute(const FeatureAllocation& x,
                         const FeatureAllocation& y, std::size_t width) {
  require_same_rows(x, y);
  if (width < x.cols() || width < y.cols()) {
    throw DimensionError("pair width " + std::to_string(width) +
                         " is narrower than an operand");
  }
  k_ = width;
  counts_.assign(width * width, DisagreementCounts{});
  x_ones_.assign(width, 0);
  y_ones_.assign(width, 0);
  for (std::size_t i = 0; i < x.cols(); ++i) x_ones_[i] = x.column_ones(i);
  for (std::size_t j = 0; j < y.cols(); ++j) y_ones_[j] = y.column_ones(j);

  // With m1 ones in x-column i, m2 in y-column j and o shared ones, the
  // pair disagrees in m1 - o cells one way and m2 - o the other. Padding
  // columns have no ones, so their rows/columns need no popcounts.
  for (std::size_t i = 0; i < width; ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      std::uint64_t overlap = 0;
      if (i < x.cols() && j < y.cols()) {
        const auto cx = x.column(i);
        const auto cy = y.column(j);
        for (std::size_t w = 0; w < cx.size(); ++w)
          overlap += std::popcount(cx[w] & cy[w]);
      }
      auto& c = counts_[i * width + j];
      c.first_only = x_ones_[i] - overlap;
      c.second_only = y_ones_[j] - overlap;
    }
  }
}

void PairCounts::fill_costs(const LossParams& p, CostMatrix& out) const {
  if (out.size() != k_) out.resize(k_);
  for (std::size_t i = 0; i < k_; ++i)
    for (std::size_t j = 0; j < k_; ++j) out(i, j) = (*this)(i, j).value(p);
}

void PairCounts::flip_first(const FeatureAllocation& y, std::size_t item,
                            std::size_t col, bool now_one) {
  DisagreementCounts* row = counts_.data() + col * k_;
  for (std::size_t j = 0; j < k_; ++j) {
    const bool y_one = j < y.cols() && y.get(item, j);
    auto& c = row[j];
    if (now_one) {
      if (y_one) --c.second_only; else ++c.first_only;
    } else {
      if (y_one) ++c.second_only; else --c.first_only;
    }
  }
  if (now_one) ++x_ones_[col]; else --x_ones_[col];
}

CostMatrix cost_matrix(const FeatureAllocation& x, const FeatureAllocation& y,
                       const LossParams& p) {
  require_same_rows(x, y);
  if (x.cols() != y.cols()) {
    throw DimensionError("cost_matrix needs equal widths; augment first (" +
                         std::to_string(x.cols()) + " vs " +
                         std::to_string(y.cols()) + ")");
  }
  PairCounts counts;
  counts.compute(x, y, x.cols());
  CostMatrix out(x.cols());
  counts.fill_costs(p, out);
  return out;
}

}  // namespace farofangs
