#include "farofangs/faro.hpp"

#include <algorithm>
#include <vector>

#include "farofangs/error.hpp"
#include "parallel.hpp"

namespace farofangs {

FaroResult FaroEvaluator::evaluate(const FeatureAllocation& x,
                                   const FeatureAllocation& y,
                                   const LossParams& p, std::size_t width) {
  if (width == 0) width = std::max(x.cols(), y.cols());
  counts_.compute(x, y, width);
  return solve(counts_, p);
}

FaroResult FaroEvaluator::solve(const PairCounts& counts,
                                const LossParams& p) {
  counts.fill_costs(p, costs_);
  FaroResult out;
  out.k_aligned = counts.size();
  out.alignment = solver_.solve(costs_);
  for (std::size_t i = 0; i < out.k_aligned; ++i)
    out.counts += counts(i, out.alignment.perm[i]);
  // Reported from integer tallies so equal penalties give exact integers.
  out.loss = out.counts.value(p);
  return out;
}

FaroResult faro_loss(const FeatureAllocation& x, const FeatureAllocation& y,
                     const LossParams& p) {
  FaroEvaluator evaluator;
  return evaluator.evaluate(x, y, p);
}

double expected_loss(const FeatureAllocation& candidate,
                     const SampleSet& samples, const LossParams& p,
                     FaroEvaluator& evaluator) {
  require_same_rows(candidate, samples[0]);
  double total = 0.0;
  for (const auto& z : samples) total += evaluator.loss(candidate, z, p);
  return total / static_cast<double>(samples.size());
}

double expected_loss(const FeatureAllocation& candidate,
                     const SampleSet& samples, const LossParams& p,
                     unsigned threads) {
  require_same_rows(candidate, samples[0]);
  threads = detail::resolve_threads(threads);
  if (threads == 1) {
    FaroEvaluator evaluator;
    return expected_loss(candidate, samples, p, evaluator);
  }
  std::vector<double> losses(samples.size(), 0.0);
  std::vector<FaroEvaluator> evaluators(threads);
  detail::parallel_for(samples.size(), threads, [&](std::size_t b) {
    auto& ev = evaluators[static_cast<std::size_t>(detail::thread_index())];
    losses[b] = ev.loss(candidate, samples[b], p);
  });
  double total = 0.0;
  for (double l : losses) total += l;
  return total / static_cast<double>(samples.size());
}

}  // namespace farofangs
