#include <doctest.h>

#include <cmath>
#include <random>

#include "hypertree/asymptotics.hpp"
#include "hypertree/error.hpp"
#include "hypertree/exact_enum.hpp"
#include "hypertree/monte_carlo.hpp"
#include "hypertree/series.hpp"

using namespace hypertree;

TEST_CASE("series arithmetic") {
  const SeriesQ g = SeriesQ::geometric(6, make_q(1, 2));
  const SeriesQ one_minus = SeriesQ::monomial(6, 0) - SeriesQ::monomial(6, 1, make_q(1, 2));
  CHECK(g * one_minus == SeriesQ::monomial(6, 0));
  CHECK(one_minus.inverse() == g);
  // log(1 - x/2) = -sum (1/2)^k / k.
  const SeriesQ l = one_minus.log();
  CHECK(l[0] == 0);
  for (std::size_t k = 1; k <= 6; ++k) CHECK(l[k] == -pow_q(make_q(1, 2), static_cast<std::int64_t>(k)) / ExactQ(static_cast<long>(k)));
  // 1/(1-y) at y = x + x^2 gives Fibonacci numbers.
  const SeriesQ inner = SeriesQ::monomial(6, 1) + SeriesQ::monomial(6, 2);
  const SeriesQ fib = SeriesQ::geometric(6, 1).compose(inner);
  const long expect[] = {1, 1, 2, 3, 5, 8, 13};
  for (std::size_t k = 0; k <= 6; ++k) CHECK(fib[k] == expect[k]);
  CHECK_THROWS(SeriesQ::monomial(4, 1).inverse());
  CHECK_THROWS(SeriesQ::geometric(4, 2).compose(SeriesQ::geometric(4, 1)));
}

TEST_CASE("spectral pairs") {
  // (2,3): A = 0, D = 2.
  const SpectralPair p1 = spectral_pair(2, 3, 1), p2 = spectral_pair(2, 3, 2), p3 = spectral_pair(2, 3, 3);
  CHECK(p1.lambda == 1);
  CHECK(p2.lambda == 1);
  CHECK(p3.lambda == make_q(4, 3));
  CHECK(p1.zeta == -1);
  CHECK(p2.zeta == make_q(-1, 2));
  // (3,2): A = 1/2, D = 2.
  CHECK(spectral_A(3, 2) == make_q(1, 2));
  CHECK(spectral_D(3, 2) == 2);
  CHECK(spectral_pair(3, 2, 1).zeta == make_q(-3, 4));
  for (int r = 2; r <= 6; ++r) {
    for (int s = 2; s <= 6; ++s) {
      for (int j = 1; j <= 8; ++j) {
        const SpectralPair p = spectral_pair(r, s, j);
        CHECK(p.lambda > 0);
        CHECK(p.zeta >= -1);
      }
    }
  }
}

TEST_CASE("xi by recurrence, series and closed form") {
  for (int r = 2; r <= 6; ++r) {
    for (int s = 2; s <= 6; ++s) {
      if (r == 2 && s == 2) continue;
      const auto a = xi_by_recurrence(r, s, 12);
      CHECK(a == xi_by_series(r, s, 12));
      CHECK(a == xi_closed(r, s, 12));
    }
  }
  CHECK(xi_closed(3, 2, 1)[0] == make_q(1, 4));
  CHECK_THROWS_AS(xi_constants(2, 2), ValidationError);
}

TEST_CASE("variance sum against a direct series") {
  for (int r = 2; r <= 6; ++r) {
    for (int s = 2; s <= 6; ++s) {
      if ((r == 2 && s == 2) || !variance_sum_applicable(r, s)) continue;
      const long double A = to_long_double(spectral_A(r, s)), D = to_long_double(spectral_D(r, s));
      long double sum = 0;
      for (int j = 1; j <= 400; ++j) {
        const long double zeta = (std::pow(A, j) - 2) / std::pow(D, j);
        sum += std::pow(D, j) / (2 * j) * zeta * zeta;
      }
      const VarianceSum v = variance_sum(r, s);
      CHECK(static_cast<double>(v.closed) == doctest::Approx(static_cast<double>(std::exp(sum))).epsilon(1e-12));
      CHECK(static_cast<double>(second_moment_ratio(r, s)) == doctest::Approx(static_cast<double>(v.closed)).epsilon(1e-13));
      CHECK(v.tail_bound < 1e-12);
      CHECK(v.partial_sums.size() == static_cast<std::size_t>(v.terms));
    }
  }
  CHECK(static_cast<double>(variance_sum(3, 2).closed) == doctest::Approx(9 / std::sqrt(14.0)).epsilon(1e-14));
  CHECK(static_cast<double>(variance_sum(2, 3).closed) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK_FALSE(variance_sum_applicable(2, 5));
  CHECK_THROWS_AS(variance_sum(2, 5), DomainError);
}

TEST_CASE("simplicity probability") {
  CHECK(static_cast<double>(prob_simple(3, 2)) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  // s >= 3: only loops matter, and lambda_1 = 1 at (2,3).
  CHECK(static_cast<double>(prob_simple(2, 3)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("asymptotic E Y approaches the exact value") {
  for (auto [r, s] : {std::pair{3, 2}, std::pair{2, 3}, std::pair{4, 5}}) {
    double previous = INFINITY;
    for (std::int64_t start : {100, 1000, 10000, 100000}) {
      const ModelParams p = validate_params(r, s, admissible_ladder(r, s, 1, start).front());
      const double gap = std::fabs(static_cast<double>(log_asymptotic_EY(p) - log_expected_Y(p)));
      CHECK(gap < previous);
      previous = gap;
    }
    CHECK(previous < 1e-4);
  }
  CHECK_THROWS_AS(log_asymptotic_EY(validate_params(2, 2, 5)), ValidationError);
}

TEST_CASE("simple-graph prefactor and its printed variant") {
  const SimpleEYEstimate e = asymptotic_EY_simple(validate_params(3, 2, 100));
  CHECK(static_cast<double>(e.exponent) == doctest::Approx(3.0 / 4));
  CHECK(static_cast<double>(e.printed_exponent) == doctest::Approx(0.5));
  CHECK(e.exponents_differ);
  CHECK(static_cast<double>(e.log_EY_simple - e.log_EY) == doctest::Approx(static_cast<double>(e.exponent)));
  CHECK_FALSE(asymptotic_EY_simple(validate_params(3, 3, 9)).exponents_differ);
}

TEST_CASE("log1p_minus_x is accurate across scales") {
  for (long double z : {-0.9L, -0.5L, -1e-3L, 1e-3L, 0.25L, 3.0L}) {
    CHECK(static_cast<double>(log1p_minus_x(z)) == doctest::Approx(static_cast<double>(std::log1p(z) - z)).epsilon(1e-12));
  }
  for (long double z : {1e-8L, -1e-8L, 1e-12L}) {
    const long double taylor = -z * z / 2 + z * z * z / 3;
    CHECK(static_cast<double>(log1p_minus_x(z)) == doctest::Approx(static_cast<double>(taylor)).epsilon(1e-9));
  }
}

TEST_CASE("Poisson generator gate") {
  // The W sampler draws Poisson variates with means up to ~1e11; check the
  // standard generator's first two moments well into that range.
  const int n = 20000;
  for (double mean : {0.5, 30.0, 1e4, 1e8, 1e10}) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(mean * 7 + 1));
    std::poisson_distribution<long long> pois(mean);
    RunningMoments m;
    for (int i = 0; i < n; ++i) m.add(static_cast<double>(pois(rng)));
    const double se_mean = std::sqrt(mean / n);
    const double se_var = mean * std::sqrt(2.0 / n) * std::sqrt(1 + 1 / (2 * mean));
    CAPTURE(mean);
    CHECK(std::fabs(m.mean() - mean) < 4 * se_mean);
    CHECK(std::fabs(m.variance() - mean) < 4 * se_var);
  }
}

TEST_CASE("W sampler") {
  CHECK(w_start(2) == 3);
  CHECK(w_start(3) == 2);
  CHECK(w_jmax(3, 2, 1) == 43);
  CHECK(w_jmax(2, 3, 1) == 43);
  CHECK_THROWS_AS(w_jmax(2, 6, 1), DomainError);
  CHECK(sample_W(3, 2, 1, 20, 9) == sample_W(3, 2, 1, 20, 9));
  const WSampler w(2, 3, 1, w_jmax(2, 3, 1));
  std::mt19937_64 rng(5);
  RunningMoments m;
  for (int i = 0; i < 200000; ++i) {
    const long double x = w.sample(rng);
    CHECK(x >= 0);
    m.add(static_cast<double>(x));
  }
  CHECK(std::fabs(m.mean() - 1) < 4 * m.standard_error());
  // zeta_1 = -1 at (2,3): W vanishes whenever Z_1 > 0, i.e. with probability 1 - e^{-1}.
  std::mt19937_64 rng2(6);
  int zeros = 0;
  for (int i = 0; i < 100000; ++i) zeros += w.sample(rng2) == 0;
  const double p0 = 1 - std::exp(-1.0);
  CHECK(std::fabs(zeros / 1e5 - p0) < 4 * std::sqrt(p0 * (1 - p0) / 1e5));
}
