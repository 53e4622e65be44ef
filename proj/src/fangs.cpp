#include "farofangs/fangs.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <string>

#include "farofangs/error.hpp"
#include "parallel.hpp"

namespace farofangs {

namespace {

FeatureAllocation align_one(const FeatureAllocation& sample,
                            const FeatureAllocation& baseline,
                            const LossParams& p, FaroEvaluator& evaluator,
                            std::vector<std::size_t>& order) {
  const std::size_t width = baseline.cols();
  const FaroResult r = evaluator.evaluate(sample, baseline, p, width);
  // Sample column i lands where its partner baseline column sits.
  order.assign(width, 0);
  for (std::size_t i = 0; i < width; ++i) order[r.alignment.perm[i]] = i;
  return permute_columns(sample, order);
}

void require_common_width(const FeatureAllocation& baseline,
                          const SampleSet& samples) {
  for (std::size_t b = 0; b < samples.size(); ++b) {
    if (samples[b].cols() != baseline.cols()) {
      throw DimensionError(
          "alignment needs samples padded to the baseline width " +
          std::to_string(baseline.cols()) + "; sample " +
          std::to_string(b + 1) + " has " +
          std::to_string(samples[b].cols()));
    }
  }
}

std::vector<FeatureAllocation> align_all(const FeatureAllocation& baseline,
                                         const SampleSet& samples,
                                         const LossParams& p,
                                         FaroEvaluator& evaluator) {
  require_same_rows(baseline, samples[0]);
  require_common_width(baseline, samples);
  std::vector<FeatureAllocation> aligned;
  aligned.reserve(samples.size());
  std::vector<std::size_t> order;
  for (const auto& z : samples) {
    if (z == baseline) {
      aligned.push_back(z);
    } else {
      aligned.push_back(align_one(z, baseline, p, evaluator, order));
    }
  }
  return aligned;
}

}  // namespace

void SearchConfig::validate(std::size_t n_samples) const {
  (void)LossParams(a);
  if (n_sweet < 1) throw ConfigError("n_sweet must be at least 1");
  if (n_sweet > n_init) {
    throw ConfigError("n_sweet (" + std::to_string(n_sweet) +
                      ") exceeds n_init (" + std::to_string(n_init) + ")");
  }
  if (n_init > n_samples) {
    throw ConfigError("n_init (" + std::to_string(n_init) +
                      ") exceeds the number of samples (" +
                      std::to_string(n_samples) + ")");
  }
}

std::vector<FeatureAllocation> align_to_baseline(
    const FeatureAllocation& baseline, const SampleSet& samples,
    const LossParams& p) {
  FaroEvaluator evaluator;
  return align_all(baseline, samples, p, evaluator);
}

Proportions Proportions::of(const std::vector<FeatureAllocation>& aligned) {
  if (aligned.empty()) {
    throw ConfigError("cannot average an empty list of matrices");
  }
  const std::size_t n = aligned.front().rows();
  const std::size_t k = aligned.front().cols();
  std::vector<std::size_t> ones(n * k, 0);
  for (const auto& z : aligned) {
    if (z.rows() != n || z.cols() != k) {
      throw DimensionError("aligned matrices must share one shape");
    }
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i) ones[j * n + i] += z.get(i, j);
  }
  Proportions out(n, k);
  const auto count = static_cast<double>(aligned.size());
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i)
      out(i, j) = static_cast<double>(ones[j * n + i]) / count;
  return out;
}

FeatureAllocation threshold(const Proportions& proportions, double a) {
  const double cutoff = LossParams(a).a() / 2.0;
  FeatureAllocation z(proportions.rows(), proportions.cols());
  for (std::size_t j = 0; j < z.cols(); ++j)
    for (std::size_t i = 0; i < z.rows(); ++i)
      if (proportions(i, j) > cutoff) z.set(i, j, true);
  return strip_zero_columns(z);
}

FeatureAllocation mean_and_threshold(
    const std::vector<FeatureAllocation>& aligned, double a) {
  return threshold(Proportions::of(aligned), a);
}

SweetenResult sweeten(const FeatureAllocation& candidate,
                      const SampleSet& samples, const LossParams& p,
                      std::size_t n_iter, Rng& rng) {
  require_same_rows(candidate, samples[0]);
  SweetenResult out{candidate, 0.0, {}};
  FeatureAllocation& z = out.candidate;

  // Per-sample column-pair counts, patched in place as cells flip, so a
  // proposal costs one O(k) row update plus one LAP per sample.
  std::vector<PairCounts> counts(samples.size());
  FaroEvaluator evaluator;
  const auto score = [&]() {
    double total = 0.0;
    for (const auto& c : counts) total += evaluator.solve(c, p).loss;
    return total / static_cast<double>(samples.size());
  };
  for (std::size_t b = 0; b < samples.size(); ++b)
    counts[b].compute(z, samples[b], std::max(z.cols(), samples[b].cols()));
  out.expected_loss = score();

  const std::size_t n = z.rows();
  const std::size_t cells = n * z.cols();
  if (cells == 0) return out;

  for (std::size_t it = 1; it <= n_iter; ++it) {
    const std::size_t cell = rng.below(cells);
    const std::size_t i = cell / z.cols();
    const std::size_t j = cell % z.cols();
    const bool now_one = !z.get(i, j);
    z.flip(i, j);
    for (std::size_t b = 0; b < samples.size(); ++b)
      counts[b].flip_first(samples[b], i, j, now_one);

    const double proposed = score();
    if (proposed < out.expected_loss) {
      out.expected_loss = proposed;
      out.trace.push_back({it, proposed});
    } else {
      z.flip(i, j);
      for (std::size_t b = 0; b < samples.size(); ++b)
        counts[b].flip_first(samples[b], i, j, !now_one);
    }
  }
  return out;
}

SampleSet augment_all(const SampleSet& samples) {
  std::vector<FeatureAllocation> padded;
  padded.reserve(samples.size());
  for (const auto& z : samples) padded.push_back(augment(z, samples.k_max()));
  return SampleSet(std::move(padded));
}

SearchResult fangs(const SampleSet& samples, const SearchConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  cfg.validate(samples.size());
  const LossParams p(cfg.a);
  const unsigned threads = detail::resolve_threads(cfg.threads);
  const SampleSet padded = augment_all(samples);

  SearchResult result;

  // Baselines without replacement: partial Fisher-Yates over indices.
  {
    Rng rng = Rng::substream(cfg.seed, Stream::kBaselineDraw);
    std::vector<std::size_t> pool(samples.size());
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t t = 0; t < cfg.n_init; ++t) {
      const std::size_t pick = t + rng.below(pool.size() - t);
      std::swap(pool[t], pool[pick]);
    }
    result.baseline_indices.assign(pool.begin(), pool.begin() + cfg.n_init);
  }

  std::vector<FeatureAllocation> initial(cfg.n_init);
  result.baseline_losses.assign(cfg.n_init, 0.0);
  detail::parallel_for(cfg.n_init, threads, [&](std::size_t t) {
    FaroEvaluator evaluator;
    const auto& baseline = padded[result.baseline_indices[t]];
    initial[t] = mean_and_threshold(align_all(baseline, padded, p, evaluator),
                                    cfg.a);
    result.baseline_losses[t] =
        expected_loss(initial[t], padded, p, evaluator);
  });

  result.advanced.resize(cfg.n_init);
  std::iota(result.advanced.begin(), result.advanced.end(), std::size_t{0});
  std::stable_sort(result.advanced.begin(), result.advanced.end(),
                   [&](std::size_t l, std::size_t r) {
                     return result.baseline_losses[l] <
                            result.baseline_losses[r];
                   });
  result.advanced.resize(cfg.n_sweet);

  std::vector<SweetenResult> chains(cfg.n_sweet);
  detail::parallel_for(cfg.n_sweet, threads, [&](std::size_t c) {
    Rng rng = Rng::substream(cfg.seed, Stream::kSweeten, c);
    chains[c] = sweeten(initial[result.advanced[c]], padded, p, cfg.n_iter,
                        rng);
  });

  std::size_t best = 0;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    if (chains[c].expected_loss < chains[best].expected_loss) best = c;
    result.n_accepted_flips += chains[c].trace.size();
    result.traces.push_back(std::move(chains[c].trace));
  }
  result.best_candidate = best;
  result.estimate = strip_zero_columns(chains[best].candidate);
  result.expected_loss = expected_loss(result.estimate, samples, p, threads);
  result.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - started)
                       .count();
  return result;
}

DrawsResult draws_method(const SampleSet& samples, const LossParams& p,
                         unsigned threads) {
  threads = detail::resolve_threads(threads);
  DrawsResult out;
  out.losses.assign(samples.size(), 0.0);
  detail::parallel_for(samples.size(), threads, [&](std::size_t b) {
    FaroEvaluator evaluator;
    out.losses[b] = expected_loss(samples[b], samples, p, evaluator);
  });
  for (std::size_t b = 1; b < samples.size(); ++b)
    if (out.losses[b] < out.losses[out.index]) out.index = b;
  out.estimate = samples[out.index];
  out.expected_loss = out.losses[out.index];
  return out;
}

FeatureAllocation sifa_estimate(const SampleSet& samples,
                                const LossParams& p) {
  const SampleSet padded = augment_all(samples);
  FaroEvaluator evaluator;
  std::vector<FeatureAllocation> aligned;
  aligned.reserve(padded.size());
  aligned.push_back(padded[0]);
  std::vector<std::size_t> order;
  for (std::size_t b = 1; b < padded.size(); ++b)
    aligned.push_back(align_one(padded[b], aligned.back(), p, evaluator, order));

  const std::size_t n = padded.rows();
  const std::size_t k = padded.k_max();
  const std::size_t total = aligned.size();
  FeatureAllocation mode(n, k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t ones = 0;
      for (const auto& z : aligned) ones += z.get(i, j);
      if (2 * ones > total) mode.set(i, j, true);
    }
  }
  return strip_zero_columns(mode);
}

Psm psm(const SampleSet& samples) {
  const std::size_t n = samples.rows();
  Psm out(n);
  for (const auto& z : samples) {
    const AdjacencyMatrix adj = adjacency(z);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += adj(i, j);
  }
  const auto count = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) /= count;
  return out;
}

double psm_score(const FeatureAllocation& candidate, const Psm& psm) {
  if (candidate.rows() != psm.size()) {
    throw DimensionError("candidate has " + std::to_string(candidate.rows()) +
                         " rows but the PSM is " + std::to_string(psm.size()) +
                         " x " + std::to_string(psm.size()));
  }
  const AdjacencyMatrix adj = adjacency(candidate);
  double score = 0.0;
  for (std::size_t i = 0; i < psm.size(); ++i) {
    for (std::size_t j = 0; j < psm.size(); ++j) {
      const double d = static_cast<double>(adj(i, j)) - psm(i, j);
      score += d * d;
    }
  }
  return score;
}

}  // namespace farofangs
