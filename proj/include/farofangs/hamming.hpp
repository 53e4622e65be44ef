#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "farofangs/matrix.hpp"

namespace farofangs {

/// Penalty pair of the generalized Hamming distance, a + b = 2.
///
/// Direction convention used everywhere in this library: the FIRST matrix
/// argument is the candidate estimate and the SECOND is the sample (or
/// truth). `a` prices a one in the estimate that the sample lacks, `b` a
/// one in the sample that the estimate lacks. Under this convention a cell
/// whose posterior proportion of ones is p costs a(1 - p) when set to 1 and
/// b p when set to 0, so 1 is the better choice exactly when p > a / 2.
class LossParams {
 public:
  /// Throws ConfigError unless 0 < a < 2.
  explicit LossParams(double a = 1.0);

  double a() const noexcept { return a_; }
  double b() const noexcept { return 2.0 - a_; }

  /// The pair with a and b exchanged.
  LossParams swapped() const { return LossParams(b()); }

 private:
  double a_;
};

/// Disagreement tallies between two equal-shape matrices.
struct DisagreementCounts {
  std::uint64_t first_only = 0;   // first 1, second 0; priced by a
  std::uint64_t second_only = 0;  // first 0, second 1; priced by b

  double value(const LossParams& p) const noexcept {
    return p.a() * static_cast<double>(first_only) +
           p.b() * static_cast<double>(second_only);
  }

  DisagreementCounts& operator+=(const DisagreementCounts& o) noexcept {
    first_only += o.first_only;
    second_only += o.second_only;
    return *this;
  }
  friend bool operator==(const DisagreementCounts&,
                         const DisagreementCounts&) = default;
};

/// Entrywise disagreement counts. Shapes must match exactly.
DisagreementCounts count_disagreements(const FeatureAllocation& x,
                                       const FeatureAllocation& y);

/// Generalized Hamming distance a*#(x=1,y=0) + b*#(x=0,y=1).
double gen_hamming(const FeatureAllocation& x, const FeatureAllocation& y,
                   const LossParams& p);

/// Square matrix of non-negative alignment costs, row-major.
class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(std::size_t k, double fill = 0.0)
      : k_(k), cost_(k * k, fill) {}
  /// From nested rows; throws DimensionError if not square.
  static CostMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return k_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return cost_[i * k_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept {
    return cost_[i * k_ + j];
  }
  const double* row(std::size_t i) const noexcept {
    return cost_.data() + i * k_;
  }
  void resize(std::size_t k) {
    k_ = k;
    cost_.assign(k * k, 0.0);
  }

 private:
  std::size_t k_ = 0;
  std::vector<double> cost_;
};

/// Column-vs-column disagreement counts for a pair of matrices, with the
/// narrower one treated as padded by zero columns up to `width`. Entry
/// (i, j) describes column i of x against column j of y.
class PairCounts {
 public:
  PairCounts() = default;

  /// Recomputes for (x, y) at common width `width` >= max(x.k, y.k).
  void compute(const FeatureAllocation& x, const FeatureAllocation& y,
               std::size_t width);

  std::size_t size() const noexcept { return k_; }
  const DisagreementCounts& operator()(std::size_t i,
                                       std::size_t j) const noexcept {
    return counts_[i * k_ + j];
  }

  /// Writes a*first_only + b*second_only into `out`, resized to fit.
  void fill_costs(const LossParams& p, CostMatrix& out) const;

  /// Updates row `col` after cell (item, col) of x was flipped to
  /// `now_one`. `y` is the second operand the counts were computed against.
  void flip_first(const FeatureAllocation& y, std::size_t item,
                  std::size_t col, bool now_one);

 private:
  std::size_t k_ = 0;
  std::vector<DisagreementCounts> counts_;
  std::vector<std::uint64_t> x_ones_;
  std::vector<std::uint64_t> y_ones_;
};

/// Cost matrix of two matrices that already share n and k.
CostMatrix cost_matrix(const FeatureAllocation& x, const FeatureAllocation& y,
                       const LossParams& p);

}  // namespace farofangs
