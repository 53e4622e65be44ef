#include "doctest.h"

#include <numeric>
#include <random>

#include "farofangs/error.hpp"
#include "farofangs/hamming.hpp"
#include "support.hpp"

using namespace farofangs;
using namespace farofangs::testing;

namespace {
// Exactly representable penalties, so sums of products are exact.
const double kDyadic[] = {0.25, 0.5, 1.0, 1.5, 1.75};
}  // namespace

TEST_CASE("LossParams domain") {
  CHECK(LossParams(0.5).b() == 1.5);
  CHECK(LossParams().a() == 1.0);
  CHECK_THROWS_AS(LossParams(0.0), ConfigError);
  CHECK_THROWS_AS(LossParams(2.0), ConfigError);
  CHECK_THROWS_AS(LossParams(-1.0), ConfigError);
  CHECK_THROWS_AS(LossParams(std::nan("")), ConfigError);
}

TEST_CASE("gen_hamming examples") {
  const auto z = tie_z1();
  CHECK(gen_hamming(z, z, LossParams(0.7)) == 0.0);

  const auto ones = FeatureAllocation::from_rows({{1}, {1}, {1}, {1}, {1}, {1}});
  const FeatureAllocation zeros(6, 1);
  CHECK(gen_hamming(ones, zeros, LossParams(1.0)) == 6.0);
  CHECK(gen_hamming(ones, zeros, LossParams(0.5)) == 3.0);

  // Hand count: first-only at (1,1), (2,1), (4,1); second-only at (3,1).
  const auto x = FeatureAllocation::from_rows({{1, 0}, {1, 1}, {0, 0}, {1, 0}});
  const auto y = FeatureAllocation::from_rows({{0, 0}, {0, 1}, {1, 0}, {0, 0}});
  const auto counts = count_disagreements(x, y);
  CHECK(counts.first_only == 3);
  CHECK(counts.second_only == 1);
  CHECK(gen_hamming(x, y, LossParams(1.5)) == 5.0);

  CHECK_THROWS_AS(gen_hamming(x, tie_z1(), LossParams()), DimensionError);
  CHECK_THROWS_AS(gen_hamming(x, augment(y, 3), LossParams()), DimensionError);
}

TEST_CASE("cost_matrix examples") {
  const auto z = tie_z1();
  const auto c = cost_matrix(z, z, LossParams(1.0));
  for (std::size_t i = 0; i < 3; ++i) CHECK(c(i, i) == 0.0);

  const auto fig = cost_matrix(augment(tie_z1(), 4), tie_z2(),
                               LossParams(1.0));
  CHECK(fig.size() == 4);
  CHECK(fig(0, 2) == 1.0);

  // Column identity a(m1 - o) + b(m2 - o): m1 = 3, m2 = 2, o = 1.
  const auto x = FeatureAllocation::from_rows({{1}, {1}, {1}, {0}});
  const auto y = FeatureAllocation::from_rows({{1}, {0}, {0}, {1}});
  const LossParams p(0.5);
  CHECK(cost_matrix(x, y, p)(0, 0) == 0.5 * 2 + 1.5 * 1);

  CHECK_THROWS_AS(cost_matrix(z, tie_z2(), p), DimensionError);
}

TEST_CASE("PairCounts virtual padding matches explicit padding") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = uniform_size(rng, 1, 90);
    const auto x = random_matrix(rng, n, uniform_size(rng, 0, 6));
    const auto y = random_matrix(rng, n, uniform_size(rng, 0, 6));
    const std::size_t width = std::max(x.cols(), y.cols());
    PairCounts virt;
    virt.compute(x, y, width);
    const auto cx = augment(x, width);
    const auto cy = augment(y, width);
    const auto full = cost_matrix(cx, cy, LossParams(1.5));
    CostMatrix from_counts;
    virt.fill_costs(LossParams(1.5), from_counts);
    for (std::size_t i = 0; i < width; ++i)
      for (std::size_t j = 0; j < width; ++j)
        CHECK(from_counts(i, j) == full(i, j));
  }
}

TEST_CASE("PairCounts incremental flips match recomputation") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = uniform_size(rng, 1, 80);
    auto x = random_matrix(rng, n, uniform_size(rng, 1, 5));
    const auto y = random_matrix(rng, n, uniform_size(rng, 0, 6));
    const std::size_t width = std::max(x.cols(), y.cols());
    PairCounts inc;
    inc.compute(x, y, width);
    for (int f = 0; f < 10; ++f) {
      const std::size_t i = uniform_size(rng, 0, n - 1);
      const std::size_t j = uniform_size(rng, 0, x.cols() - 1);
      x.flip(i, j);
      inc.flip_first(y, i, j, x.get(i, j));
    }
    PairCounts fresh;
    fresh.compute(x, y, width);
    for (std::size_t i = 0; i < width; ++i)
      for (std::size_t j = 0; j < width; ++j) CHECK(inc(i, j) == fresh(i, j));
  }
}

TEST_CASE("generalized Hamming quasi-metric properties (property)") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = uniform_size(rng, 1, 40);
    const std::size_t k = uniform_size(rng, 0, 6);
    const auto u = random_matrix(rng, n, k);
    const auto v = random_matrix(rng, n, k);
    const auto w = random_matrix(rng, n, k);
    const double a = kDyadic[trial % 5];
    const LossParams p(a);

    // Matches the entrywise oracle.
    CHECK(gen_hamming(u, v, p) ==
          oracle_gen_hamming(u.to_rows(), v.to_rows(), a));

    CHECK(gen_hamming(u, u, p) == 0.0);
    CHECK((gen_hamming(u, v, p) == 0.0) == (u == v));
    CHECK(gen_hamming(u, v, p) + gen_hamming(v, w, p) >=
          gen_hamming(u, w, p) - 1e-9);
    CHECK(gen_hamming(u, v, p) == gen_hamming(v, u, p.swapped()));
    CHECK(gen_hamming(u, v, LossParams(1.0)) ==
          gen_hamming(v, u, LossParams(1.0)));

    // Complement identity.
    double baseline_term = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j)
        baseline_term += u.get(i, j) ? p.b() : p.a();
    const double nk = static_cast<double>(n * k);
    CHECK(gen_hamming(u, complement(v), p) ==
          nk * (p.a() + p.b()) - baseline_term - gen_hamming(u, v, p));

    // Summing cost entries along any permutation equals the permuted
    // distance.
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto c = cost_matrix(u, v, p);
    double along = 0.0;
    for (std::size_t i = 0; i < k; ++i) along += c(i, perm[i]);
    CHECK(along == doctest::Approx(gen_hamming(u, permute_columns(v, perm), p))
                       .epsilon(1e-12));
  }
}
