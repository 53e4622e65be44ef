#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "farofangs/faro.hpp"
#include "farofangs/hamming.hpp"
#include "farofangs/matrix.hpp"
#include "farofangs/rng.hpp"

namespace farofangs {

/// Tuning parameters of the FANGS search.
struct SearchConfig {
  std::size_t n_init = 16;   // baselines drawn for initial estimates
  std::size_t n_sweet = 4;   // initial estimates advanced to sweetening
  std::size_t n_iter = 1000; // flip proposals per sweetened candidate
  double a = 1.0;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = all available cores

  /// Throws ConfigError unless 1 <= n_sweet <= n_init <= n_samples and
  /// 0 < a < 2.
  void validate(std::size_t n_samples) const;
};

struct TracePoint {
  std::size_t iteration = 0;  // 1-based proposal index
  double expected_loss = 0.0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct SearchResult {
  FeatureAllocation estimate;  // zero columns stripped
  double expected_loss = 0.0;
  double seconds = 0.0;
  /// Sample index of each baseline, in draw order.
  std::vector<std::size_t> baseline_indices;
  /// Expected loss of the initial estimate built from each baseline.
  std::vector<double> baseline_losses;
  /// Positions (into baseline_indices) of the advanced candidates.
  std::vector<std::size_t> advanced;
  /// Accepted flips of each advanced candidate.
  std::vector<std::vector<TracePoint>> traces;
  std::size_t n_accepted_flips = 0;
  /// Which advanced candidate produced the estimate.
  std::size_t best_candidate = 0;
};

/// Reorders the columns of every sample to best match `baseline`. The
/// sample sits in the estimate slot of the LAP and the baseline in the
/// sample slot. Inputs must all be padded to the same width; each output
/// has that width.
std::vector<FeatureAllocation> align_to_baseline(
    const FeatureAllocation& baseline, const SampleSet& samples,
    const LossParams& p);

/// Cellwise proportion of ones across equal-shape matrices, column-major
/// (index j * n + i).
class Proportions {
 public:
  Proportions(std::size_t n, std::size_t k) : n_(n), k_(k), p_(n * k, 0.0) {}
  static Proportions of(const std::vector<FeatureAllocation>& aligned);

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return k_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return p_[j * n_ + i];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept {
    return p_[j * n_ + i];
  }

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<double> p_;
};

/// 1 where the proportion strictly exceeds a/2, then zero columns removed.
FeatureAllocation threshold(const Proportions& proportions, double a);

/// threshold(Proportions::of(aligned), a). Throws ConfigError when empty.
FeatureAllocation mean_and_threshold(
    const std::vector<FeatureAllocation>& aligned, double a);

struct SweetenResult {
  FeatureAllocation candidate;  // same width as the input
  double expected_loss = 0.0;
  std::vector<TracePoint> trace;
};

/// Greedy single-cell flips over the candidate's n x k cells, each kept
/// only if it strictly lowers the expected FARO loss.
SweetenResult sweeten(const FeatureAllocation& candidate,
                      const SampleSet& samples, const LossParams& p,
                      std::size_t n_iter, Rng& rng);

/// Full search: padding to K_max, baseline initial estimates, advancement
/// of the best n_sweet, sweetening, best-of selection.
SearchResult fangs(const SampleSet& samples, const SearchConfig& cfg);

struct DrawsResult {
  std::size_t index = 0;
  FeatureAllocation estimate;
  double expected_loss = 0.0;
  /// Expected loss of every sample as a candidate.
  std::vector<double> losses;
};

/// The sample with the lowest expected FARO loss; lowest index on ties.
DrawsResult draws_method(const SampleSet& samples, const LossParams& p,
                         unsigned threads = 0);

/// Sequential alignment of each sample to its aligned predecessor, then
/// the cellwise mode (ties to 0), zero columns removed.
FeatureAllocation sifa_estimate(const SampleSet& samples,
                                const LossParams& p);

/// Dense n x n real matrix, row-major.
class Psm {
 public:
  explicit Psm(std::size_t n) : n_(n), v_(n * n, 0.0) {}
  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return v_[i * n_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept {
    return v_[i * n_ + j];
  }

 private:
  std::size_t n_;
  std::vector<double> v_;
};

/// Elementwise mean of the samples' adjacency matrices.
Psm psm(const SampleSet& samples);

/// Sum of squared differences between adjacency(candidate) and the PSM.
double psm_score(const FeatureAllocation& candidate, const Psm& psm);

/// Pads every sample to the set's K_max.
SampleSet augment_all(const SampleSet& samples);

}  // namespace farofangs
