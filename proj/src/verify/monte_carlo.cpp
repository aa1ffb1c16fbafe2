#include "hypertree/monte_carlo.hpp"

#include <cmath>
#include <optional>

#include "hypertree/cycles.hpp"
#include "hypertree/error.hpp"
#include "hypertree/hypergraph.hpp"
#include "hypertree/parallel.hpp"
#include "hypertree/sampling.hpp"

namespace hypertree {

void RunningMoments::add(double x) {
  ++n_;
  const double d = x - mean_;
  mean_ += d / static_cast<double>(n_);
  m2_ += d * (x - mean_);
}

void RunningMoments::merge(const RunningMoments& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_), nb = static_cast<double>(other.n_);
  const double d = other.mean_ - mean_;
  mean_ += d * nb / (na + nb);
  m2_ += other.m2_ + d * d * na * nb / (na + nb);
  n_ += other.n_;
}

double RunningMoments::standard_error() const {
  return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

MeanEstimate estimate(const RunningMoments& m) { return {m.mean(), m.standard_error(), m.count()}; }

namespace {

struct Trial {
  std::vector<std::int64_t> cycles;
  bool simple = false;
  bool connected = false;
  std::optional<bool> tree;
};

}  // namespace

McSummary run_monte_carlo(const ModelParams& params, const McOptions& options) {
  require_configurable(params);
  if (options.trials < 1) throw ValidationError("trials must be >= 1");
  if (options.jmax < 1) throw ValidationError("jmax must be >= 1");
  const auto trials = parallel_map(static_cast<std::uint64_t>(options.trials), [&](std::uint64_t i) {
    const Configuration c = sample_configuration(params, derive_seed(options.seed, i));
    const CycleCensus census = census_cycles(c, options.jmax);
    Trial t;
    for (int j = 1; j <= options.jmax; ++j) t.cycles.push_back(census.count(j));
    const Hypergraph h = project(c);
    t.simple = is_simple(h);
    t.connected = is_connected(h);
    if (options.trees && t.simple) t.tree = has_spanning_tree(h, options.tree_budget);
    return t;
  });

  std::vector<RunningMoments> cyc(static_cast<std::size_t>(options.jmax));
  RunningMoments simple, connected, tree;
  McSummary out;
  out.params = params;
  out.options = options;
  for (const Trial& t : trials) {
    for (std::size_t j = 0; j < cyc.size(); ++j) cyc[j].add(static_cast<double>(t.cycles[j]));
    simple.add(t.simple ? 1.0 : 0.0);
    connected.add(t.connected ? 1.0 : 0.0);
    if (options.trees && t.simple) {
      if (t.tree) {
        tree.add(*t.tree ? 1.0 : 0.0);
      } else {
        ++out.tree_censored;
      }
    }
  }
  for (const auto& m : cyc) out.cycles.push_back(estimate(m));
  out.simple_rate = estimate(simple);
  out.connected_rate = estimate(connected);
  out.tree_rate = estimate(tree);
  return out;
}

}  // namespace hypertree
