#pragma once

// Shared fixtures and brute-force oracles for the test suites. The oracles
// work on plain nested vectors and never call the library's cost-matrix or
// assignment code.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "farofangs/matrix.hpp"

namespace farofangs::testing {

using Rows = std::vector<std::vector<int>>;

// Z1 and Z2 from the adjacency non-uniqueness example.
inline Rows tie_z1_rows() {
  return {{0, 0, 0}, {1, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 0}};
}
inline Rows tie_z2_rows() {
  return {{0, 0, 0, 0}, {0, 0, 1, 1}, {0, 1, 1, 0},
          {0, 0, 1, 1}, {1, 0, 1, 0}, {1, 0, 1, 0}};
}
inline FeatureAllocation tie_z1() {
  return FeatureAllocation::from_rows(tie_z1_rows());
}
inline FeatureAllocation tie_z2() {
  return FeatureAllocation::from_rows(tie_z2_rows());
}

// FARO loss of the adjacency-tie pair at a = 1, computed by the exhaustive oracle
// below over all 4! alignments (and cross-checked offline). Both matrices
// hold 12 ones, so the two disagreement kinds are equal in number and the
// value is 4 for every a.
inline constexpr double kTiePairFaro = 4.0;

// Cost matrix of the assignment worked example.
inline std::vector<std::vector<double>> worked_example_costs() {
  return {{14, 3, 5, 8}, {5, 12, 2, 6}, {4, 7, 7, 10}, {9, 2, 5, 2}};
}

inline FeatureAllocation random_matrix(std::mt19937_64& rng, std::size_t n,
                                       std::size_t k, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  FeatureAllocation z(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) z.set(i, j, bit(rng));
  return z;
}

inline std::size_t uniform_size(std::mt19937_64& rng, std::size_t lo,
                                std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Rows pad_rows(const Rows& rows, std::size_t width) {
  Rows out = rows;
  for (auto& r : out) r.resize(width, 0);
  return out;
}

struct CountPair {
  std::uint64_t first_only = 0;
  std::uint64_t second_only = 0;
  double value(double a) const {
    return a * static_cast<double>(first_only) +
           (2.0 - a) * static_cast<double>(second_only);
  }
};

// Entrywise tally of x against column-permuted y: y column perm[j] is
// compared with x column j.
inline CountPair oracle_counts(const Rows& x, const Rows& y,
                               const std::vector<std::size_t>& perm) {
  CountPair c;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < perm.size(); ++j) {
      const int xv = x[i][j];
      const int yv = y[i][perm[j]];
      if (xv == 1 && yv == 0) ++c.first_only;
      if (xv == 0 && yv == 1) ++c.second_only;
    }
  }
  return c;
}

inline double oracle_gen_hamming(const Rows& x, const Rows& y, double a) {
  std::vector<std::size_t> id(x.empty() ? 0 : x.front().size());
  std::iota(id.begin(), id.end(), std::size_t{0});
  return oracle_counts(x, y, id).value(a);
}

// Minimum over every column permutation of the zero-padded pair.
inline double oracle_faro(const FeatureAllocation& x,
                          const FeatureAllocation& y, double a) {
  const std::size_t width = std::max(x.cols(), y.cols());
  const Rows xr = pad_rows(x.to_rows(), width);
  const Rows yr = pad_rows(y.to_rows(), width);
  std::vector<std::size_t> perm(width);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    best = std::min(best, oracle_counts(xr, yr, perm).value(a));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Brute-force assignment on an explicit cost table.
inline double oracle_assignment(const std::vector<std::vector<double>>& c) {
  std::vector<std::size_t> perm(c.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) total += c[i][perm[i]];
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace farofangs::testing
