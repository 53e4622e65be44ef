#include "farofangs/lap.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "farofangs/error.hpp"
#include "farofangs/rng.hpp"

namespace farofangs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const CostMatrix& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      const double v = c(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw ConfigError("cost entry (" + std::to_string(i + 1) + ", " +
                          std::to_string(j + 1) +
                          ") must be finite and non-negative");
      }
    }
  }
}

double assignment_cost(const CostMatrix& c,
                       const std::vector<std::size_t>& perm) {
  double total = 0.0;
  for (std::size_t i = 0; i < perm.size(); ++i) total += c(i, perm[i]);
  return total;
}

}  // namespace

Assignment LapSolver::solve(const CostMatrix& c) {
  validate(c);
  n_ = c.size();
  Assignment out;
  if (n_ == 0) return out;
  if (n_ == 1) {
    out.perm = {0};
    out.cost = c(0, 0);
    return out;
  }

  row_to_col_.assign(n_, -1);
  col_to_row_.assign(n_, -1);
  v_.assign(n_, kInf);
  free_rows_.assign(n_, -1);

  column_reduction(c);
  // Two passes of augmenting row reduction, as in the original method.
  for (int pass = 0; pass < 2 && n_free_ > 0; ++pass)
    augmenting_row_reduction(c);
  if (n_free_ > 0) augment(c);

  out.perm.resize(n_);
  for (std::size_t i = 0; i < n_; ++i)
    out.perm[i] = static_cast<std::size_t>(row_to_col_[i]);
  out.cost = assignment_cost(c, out.perm);
  return out;
}

// Each column goes to its cheapest row; rows that win one column keep it
// and transfer their reduction slack into that column's dual.
void LapSolver::column_reduction(const CostMatrix& c) {
  const auto n = static_cast<std::ptrdiff_t>(n_);
  std::vector<std::ptrdiff_t> best_row(n_, 0);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double* row = c.row(i);
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      if (row[j] < v_[j]) {
        v_[j] = row[j];
        best_row[j] = i;
      }
    }
  }

  std::vector<char> unique(n_, 1);
  for (std::ptrdiff_t j = n - 1; j >= 0; --j) {
    const std::ptrdiff_t i = best_row[j];
    if (row_to_col_[i] < 0) {
      row_to_col_[i] = j;
      col_to_row_[j] = i;
    } else {
      unique[i] = 0;
    }
  }

  n_free_ = 0;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (row_to_col_[i] < 0) {
      free_rows_[n_free_++] = i;
    } else if (unique[i]) {
      const std::ptrdiff_t j = row_to_col_[i];
      double slack = kInf;
      const double* row = c.row(i);
      for (std::ptrdiff_t j2 = 0; j2 < n; ++j2) {
        if (j2 != j) slack = std::min(slack, row[j2] - v_[j2]);
      }
      v_[j] -= slack;
    }
  }
}

void LapSolver::augmenting_row_reduction(const CostMatrix& c) {
  const auto n = static_cast<std::ptrdiff_t>(n_);
  const std::size_t n_free = n_free_;
  std::size_t current = 0;
  std::size_t new_free = 0;
  std::size_t rr_count = 0;

  while (current < n_free) {
    ++rr_count;
    const std::ptrdiff_t free_i = free_rows_[current++];
    const double* row = c.row(free_i);

    // Lowest and second-lowest reduced cost in the row.
    std::ptrdiff_t j1 = 0;
    double u1 = row[0] - v_[0];
    std::ptrdiff_t j2 = -1;
    double u2 = kInf;
    for (std::ptrdiff_t j = 1; j < n; ++j) {
      const double h = row[j] - v_[j];
      if (h < u2) {
        if (h >= u1) {
          u2 = h;
          j2 = j;
        } else {
          u2 = u1;
          u1 = h;
          j2 = j1;
          j1 = j;
        }
      }
    }

    std::ptrdiff_t i0 = col_to_row_[j1];
    const double v1_new = v_[j1] - (u2 - u1);
    const bool v1_lowers = v1_new < v_[j1];
    if (rr_count < current * n_) {
      if (v1_lowers) {
        v_[j1] = v1_new;
      } else if (i0 >= 0 && j2 >= 0) {
        j1 = j2;
        i0 = col_to_row_[j2];
      }
      if (i0 >= 0) {
        if (v1_lowers) {
          free_rows_[--current] = i0;
        } else {
          free_rows_[new_free++] = i0;
        }
      }
    } else if (i0 >= 0) {
      free_rows_[new_free++] = i0;
    }
    row_to_col_[free_i] = j1;
    col_to_row_[j1] = free_i;
  }
  n_free_ = new_free;
}

// Dijkstra over reduced costs from `start` until an unassigned column is
// reached. Leaves predecessors in pred_ and updates the duals of the
// columns whose distance was finalized.
std::ptrdiff_t LapSolver::shortest_path(const CostMatrix& c,
                                        std::ptrdiff_t start) {
  const std::size_t n = n_;
  cols_.resize(n);
  dist_.resize(n);
  pred_.resize(n);
  const double* start_row = c.row(start);
  for (std::size_t j = 0; j < n; ++j) {
    cols_[j] = static_cast<std::ptrdiff_t>(j);
    pred_[j] = start;
    dist_[j] = start_row[j] - v_[j];
  }

  // cols_[0, ready) finalized; cols_[lo, hi) at the current minimum
  // distance awaiting scan; cols_[hi, n) unreached.
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::size_t ready = 0;
  std::ptrdiff_t final_j = -1;

  while (final_j < 0) {
    if (lo == hi) {
      ready = lo;
      // Collect every column at the new minimum distance.
      hi = lo + 1;
      double min_d = dist_[cols_[lo]];
      for (std::size_t k = hi; k < n; ++k) {
        const std::ptrdiff_t j = cols_[k];
        if (dist_[j] <= min_d) {
          if (dist_[j] < min_d) {
            hi = lo;
            min_d = dist_[j];
          }
          cols_[k] = cols_[hi];
          cols_[hi++] = j;
        }
      }
      for (std::size_t k = lo; k < hi; ++k) {
        if (col_to_row_[cols_[k]] < 0) final_j = cols_[k];
      }
    }
    if (final_j >= 0) break;

    // Scan the rows owning the minimum-distance columns.
    while (lo != hi && final_j < 0) {
      std::ptrdiff_t j = cols_[lo++];
      const std::ptrdiff_t i = col_to_row_[j];
      const double min_d = dist_[j];
      const double* row = c.row(i);
      const double h = row[j] - v_[j] - min_d;
      for (std::size_t k = hi; k < n; ++k) {
        j = cols_[k];
        const double reduced = row[j] - v_[j] - h;
        if (reduced < dist_[j]) {
          dist_[j] = reduced;
          pred_[j] = i;
          if (reduced == min_d) {
            if (col_to_row_[j] < 0) {
              final_j = j;
              break;
            }
            cols_[k] = cols_[hi];
            cols_[hi++] = j;
          }
        }
      }
    }
  }

  const double min_d = dist_[final_j];
  for (std::size_t k = 0; k < ready; ++k) {
    const std::ptrdiff_t j = cols_[k];
    v_[j] += dist_[j] - min_d;
  }
  return final_j;
}

void LapSolver::augment(const CostMatrix& c) {
  for (std::size_t f = 0; f < n_free_; ++f) {
    const std::ptrdiff_t start = free_rows_[f];
    std::ptrdiff_t j = shortest_path(c, start);
    std::ptrdiff_t i = -1;
    std::size_t steps = 0;
    while (i != start) {
      i = pred_[j];
      col_to_row_[j] = i;
      std::swap(j, row_to_col_[i]);
      if (++steps > n_) throw Error("assignment augmentation did not terminate");
    }
  }
  n_free_ = 0;
}

Assignment solve_lap(const CostMatrix& c) {
  LapSolver solver;
  return solver.solve(c);
}

Assignment brute_force_lap(const CostMatrix& c) {
  const std::size_t k = c.size();
  if (k > kMaxBruteForceSize) {
    throw SizeError("exhaustive assignment refused for k = " +
                    std::to_string(k) + " (limit " +
                    std::to_string(kMaxBruteForceSize) + ")");
  }
  validate(c);
  Assignment best;
  best.perm.resize(k);
  std::iota(best.perm.begin(), best.perm.end(), std::size_t{0});
  best.cost = assignment_cost(c, best.perm);
  std::vector<std::size_t> perm = best.perm;
  while (std::next_permutation(perm.begin(), perm.end())) {
    const double cost = assignment_cost(c, perm);
    if (cost < best.cost) {
      best.cost = cost;
      best.perm = perm;
    }
  }
  return best;
}

std::vector<BenchRow> bench_alignment(const std::vector<std::size_t>& k_values,
                                      std::size_t n, std::size_t reps,
                                      std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  const LossParams p(1.0);
  std::vector<BenchRow> table;
  for (std::size_t k : k_values) {
    if (k > kMaxBruteForceSize) {
      throw SizeError("bench: k = " + std::to_string(k) +
                      " exceeds the exhaustive limit of " +
                      std::to_string(kMaxBruteForceSize));
    }
    Rng rng = Rng::substream(seed, Stream::kBench, k);
    BenchRow row;
    row.k = k;
    double exhaustive_total = 0.0;
    double lap_total = 0.0;
    LapSolver solver;
    for (std::size_t r = 0; r < reps; ++r) {
      FeatureAllocation x(n, k);
      FeatureAllocation y(n, k);
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
          x.set(i, j, rng.next() & 1U);
          y.set(i, j, rng.next() & 1U);
        }
      }

      const auto t0 = Clock::now();
      const Assignment slow = brute_force_lap(cost_matrix(x, y, p));
      const auto t1 = Clock::now();
      const Assignment fast = solver.solve(cost_matrix(x, y, p));
      const auto t2 = Clock::now();

      exhaustive_total +=
          std::chrono::duration<double, std::milli>(t1 - t0).count();
      lap_total += std::chrono::duration<double, std::milli>(t2 - t1).count();
      if (slow.cost != fast.cost) row.costs_agree = false;
    }
    if (reps > 0) {
      row.exhaustive_ms = exhaustive_total / static_cast<double>(reps);
      row.lap_ms = lap_total / static_cast<double>(reps);
    }
    table.push_back(row);
  }
  return table;
}

}  // namespace farofangs
