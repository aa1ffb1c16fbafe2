#pragma once

#include <cstdint>
#include <vector>

#include "hypertree/params.hpp"
#include "hypertree/spanning.hpp"

namespace hypertree {

/// Welford accumulator; merge() is exact for counts and combines the
/// second moments with the parallel formula.
class RunningMoments {
 public:
  void add(double x);
  void merge(const RunningMoments& other);
  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double standard_error() const;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0;
  double m2_ = 0;
};

struct MeanEstimate {
  double mean = 0;
  double se = 0;
  std::uint64_t count = 0;
};

MeanEstimate estimate(const RunningMoments& m);

struct McOptions {
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  int jmax = 3;
  bool trees = true;
  std::uint64_t tree_budget = 1'000'000;
};

struct McSummary {
  ModelParams params;
  McOptions options;
  std::vector<MeanEstimate> cycles;  // cycles[j-1]: configuration-level X_j
  MeanEstimate simple_rate;
  MeanEstimate connected_rate;       // over all projected samples
  MeanEstimate tree_rate;            // over simple samples whose search finished
  std::int64_t tree_censored = 0;    // simple samples where the budget ran out
};

/// Trial i draws a configuration from derive_seed(seed, i), so the summary is
/// identical for any number of worker threads.
McSummary run_monte_carlo(const ModelParams& params, const McOptions& options);

}  // namespace hypertree
