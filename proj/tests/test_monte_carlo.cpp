#include <doctest.h>

#include <cmath>
#include <random>

#include "hypertree/asymptotics.hpp"
#include "hypertree/error.hpp"
#include "hypertree/monte_carlo.hpp"
#include "hypertree/parallel.hpp"

using namespace hypertree;

TEST_CASE("running moments merge like a single pass") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd(2.0, 3.0);
  RunningMoments all, left, right;
  for (int i = 0; i < 1000; ++i) {
    const double x = nd(rng);
    all.add(x);
    (i < 370 ? left : right).add(x);
  }
  left.merge(right);
  CHECK(left.count() == all.count());
  CHECK(left.mean() == doctest::Approx(all.mean()).epsilon(1e-13));
  CHECK(left.variance() == doctest::Approx(all.variance()).epsilon(1e-12));
  RunningMoments empty;
  empty.merge(all);
  CHECK(empty.mean() == all.mean());
}

TEST_CASE("parallel map is independent of the thread count") {
  auto f = [](std::uint64_t i) { return std::mt19937_64(i)() % 1000; };
  CHECK(parallel_map(257, f, 1) == parallel_map(257, f, 7));
  CHECK(parallel_map(0, f, 3).empty());
  CHECK_THROWS_AS(parallel_map(10, [](std::uint64_t i) -> int {
                    if (i == 6) throw ValidationError("boom");
                    return 0;
                  }, 4),
                  ValidationError);
}

TEST_CASE("Monte Carlo summaries are reproducible") {
  McOptions opt;
  opt.trials = 300;
  opt.seed = 77;
  opt.jmax = 3;
  const ModelParams p = validate_params(3, 3, 9);
  const McSummary a = run_monte_carlo(p, opt);
  const McSummary b = run_monte_carlo(p, opt);
  for (std::size_t j = 0; j < a.cycles.size(); ++j) {
    CHECK(a.cycles[j].mean == b.cycles[j].mean);
    CHECK(a.cycles[j].se == b.cycles[j].se);
  }
  CHECK(a.simple_rate.mean == b.simple_rate.mean);
  CHECK(a.tree_rate.mean == b.tree_rate.mean);
  CHECK(a.tree_rate.count + static_cast<std::uint64_t>(a.tree_censored) ==
        static_cast<std::uint64_t>(std::llround(a.simple_rate.mean * 300)));
  opt.trials = 0;
  CHECK_THROWS_AS(run_monte_carlo(p, opt), ValidationError);
}

TEST_CASE("cycle counts track their Poisson means") {
  // Moderate n keeps this quick; the acceptance run uses n ~ 3000.
  McOptions opt;
  opt.trials = 4000;
  opt.seed = 5;
  opt.jmax = 3;
  opt.trees = false;
  const McSummary mc = run_monte_carlo(validate_params(3, 2, 400), opt);
  for (int j = 1; j <= 3; ++j) {
    const double lambda = static_cast<double>(to_long_double(spectral_pair(3, 2, j).lambda));
    const MeanEstimate& e = mc.cycles[static_cast<std::size_t>(j - 1)];
    CAPTURE(j);
    CHECK(std::fabs(e.mean - lambda) < 4 * e.se + 0.02 * lambda);
  }
  CHECK(std::fabs(mc.simple_rate.mean - std::exp(-2.0)) < 4 * mc.simple_rate.se + 0.01);
  CHECK(mc.connected_rate.mean > 0.99);
}
