#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "farofangs/hamming.hpp"

namespace farofangs {

/// perm[i] = j assigns row (column i of the first matrix) to column j of
/// the second. cost is the sum of the assigned entries.
struct Assignment {
  std::vector<std::size_t> perm;
  double cost = 0.0;
};

/// Jonker-Volgenant shortest-augmenting-path solver for the balanced
/// linear assignment problem, O(k^3).
///
/// Phases: column reduction with reduction transfer, two rounds of
/// augmenting row reduction, then Dijkstra-style augmentation for every row
/// still free. The object keeps scratch buffers between calls, so reuse
/// one per thread in hot loops; it must not be shared between threads.
class LapSolver {
 public:
  /// Throws ConfigError on negative or non-finite entries.
  Assignment solve(const CostMatrix& c);

 private:
  void column_reduction(const CostMatrix& c);
  void augmenting_row_reduction(const CostMatrix& c);
  void augment(const CostMatrix& c);
  std::ptrdiff_t shortest_path(const CostMatrix& c, std::ptrdiff_t start);

  std::size_t n_ = 0;
  std::vector<std::ptrdiff_t> row_to_col_;
  std::vector<std::ptrdiff_t> col_to_row_;
  std::vector<double> v_;  // column duals
  std::vector<std::ptrdiff_t> free_rows_;
  std::size_t n_free_ = 0;
  // shortest_path scratch
  std::vector<std::ptrdiff_t> cols_;
  std::vector<std::ptrdiff_t> pred_;
  std::vector<double> dist_;
};

Assignment solve_lap(const CostMatrix& c);

/// Largest k accepted by brute_force_lap.
inline constexpr std::size_t kMaxBruteForceSize = 12;

/// Minimum over all k! permutations, visited in lexicographic order; the
/// first minimum wins. Throws SizeError for k > kMaxBruteForceSize.
Assignment brute_force_lap(const CostMatrix& c);

struct BenchRow {
  std::size_t k = 0;
  double exhaustive_ms = 0.0;
  double lap_ms = 0.0;
  bool costs_agree = true;  // every instance gave the same optimum
};

/// Times brute_force_lap against solve_lap on random binary n x k pairs
/// (entries uniform 0/1, a = 1; cost-matrix construction included in both
/// arms). Means over `reps` instances per k.
std::vector<BenchRow> bench_alignment(const std::vector<std::size_t>& k_values,
                                      std::size_t n, std::size_t reps,
                                      std::uint64_t seed);

}  // namespace farofangs
