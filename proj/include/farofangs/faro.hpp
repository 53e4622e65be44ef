#pragma once

#include <cstddef>

#include "farofangs/hamming.hpp"
#include "farofangs/lap.hpp"
#include "farofangs/matrix.hpp"

namespace farofangs {

/// FARO loss of an ordered pair plus the alignment that attains it.
struct FaroResult {
  double loss = 0.0;
  /// alignment.perm[i] = j pairs column i of the first matrix with column j
  /// of the second, both zero-padded to k_aligned columns.
  Assignment alignment;
  std::size_t k_aligned = 0;
  /// Disagreement tallies along the alignment; loss = counts.value(p).
  DisagreementCounts counts;
};

/// Reusable FARO evaluation state (count matrix, cost matrix, LAP scratch).
/// One per thread.
class FaroEvaluator {
 public:
  /// FARO loss with both operands padded to `width`; width 0 means
  /// max(x.cols(), y.cols()).
  FaroResult evaluate(const FeatureAllocation& x, const FeatureAllocation& y,
                      const LossParams& p, std::size_t width = 0);

  double loss(const FeatureAllocation& x, const FeatureAllocation& y,
              const LossParams& p) {
    return evaluate(x, y, p).loss;
  }

  /// Solves the alignment for precomputed column-pair counts.
  FaroResult solve(const PairCounts& counts, const LossParams& p);

 private:
  PairCounts counts_;
  CostMatrix costs_;
  LapSolver solver_;
};

/// Minimum generalized Hamming distance over column alignments of x and y
/// after padding the narrower one with zero columns. Rows must agree.
FaroResult faro_loss(const FeatureAllocation& x, const FeatureAllocation& y,
                     const LossParams& p);

/// Monte Carlo expected FARO loss (1/B) sum_b L(candidate, Z_b), candidate in
/// the estimate position. Each pair is padded to its own common width.
/// Per-sample losses may be computed on `threads` workers (0 = all cores);
/// they are always summed in sample order, so the value does not depend on
/// the thread count.
double expected_loss(const FeatureAllocation& candidate,
                     const SampleSet& samples, const LossParams& p,
                     unsigned threads = 1);

/// Sequential variant that reuses the caller's evaluator.
double expected_loss(const FeatureAllocation& candidate,
                     const SampleSet& samples, const LossParams& p,
                     FaroEvaluator& evaluator);

}  // namespace farofangs
