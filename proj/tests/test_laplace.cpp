#include <doctest.h>

#include <cmath>

#include "hypertree/asymptotics.hpp"
#include "hypertree/error.hpp"
#include "hypertree/laplace.hpp"
#include "hypertree/threshold.hpp"

using namespace hypertree;

namespace {

double dbl(long double x) { return static_cast<double>(x); }

using Pair = std::pair<int, int>;
const Pair kInterior[] = {{3, 2}, {2, 3}, {3, 3}, {2, 4}, {4, 5}, {5, 5}, {9, 6}, {12, 7}};

std::array<std::array<long double, 2>, 2> fd_hessian(LaplacePoint x, int r, int s, long double h) {
  auto f = [&](long double da, long double db) { return phi({x.alpha + da, x.beta + db}, r, s); };
  const long double f0 = f(0, 0);
  const long double aa = (f(h, 0) - 2 * f0 + f(-h, 0)) / (h * h);
  const long double bb = (f(0, h) - 2 * f0 + f(0, -h)) / (h * h);
  const long double ab = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h);
  return {{{aa, ab}, {ab, bb}}};
}

}  // namespace

TEST_CASE("phi at the stationary point") {
  for (auto [r, s] : kInterior) {
    const LaplacePoint x0 = stationary_point(r, s);
    CHECK(dbl(phi(x0, r, s)) == doctest::Approx(dbl(phi_stationary_closed(r, s))).epsilon(1e-15));
    const auto g = grad_phi(x0, r, s);
    CHECK(std::hypot(dbl(g[0]), dbl(g[1])) < 1e-15);
  }
  CHECK(dbl(stationary_point(3, 2).alpha) == doctest::Approx(1.0 / 3));
  CHECK(dbl(phi_stationary_closed(3, 2)) == doctest::Approx(2.2232825779));
}

TEST_CASE("phi domain") {
  CHECK(dbl(phi({0, 0}, 3, 2)) == doctest::Approx(2 * std::log(2.0)));
  CHECK_THROWS_AS(phi({0.6, 0.6}, 3, 2), DomainError);
  CHECK_THROWS_AS(phi({-0.1, 0.2}, 3, 2), DomainError);
  CHECK_THROWS_AS(grad_phi({0, 0.2}, 3, 2), DomainError);
  CHECK(in_K({0.25, 0.75}, 2));
  CHECK_FALSE(in_K({0.25, 0.8}, 2));
  CHECK(dbl(g_xlogx(0)) == 0);
  CHECK_THROWS_AS(g_xlogx(-0.1L), DomainError);
}

TEST_CASE("gradient matches finite differences away from the stationary point") {
  for (auto [r, s] : kInterior) {
    const LaplacePoint x0 = stationary_point(r, s);
    const LaplacePoint x{x0.alpha * 0.8L, x0.beta * 0.9L};
    const long double h = 1e-7L;
    const auto g = grad_phi(x, r, s);
    const long double ga = (phi({x.alpha + h, x.beta}, r, s) - phi({x.alpha - h, x.beta}, r, s)) / (2 * h);
    const long double gb = (phi({x.alpha, x.beta + h}, r, s) - phi({x.alpha, x.beta - h}, r, s)) / (2 * h);
    CHECK(dbl(g[0]) == doctest::Approx(dbl(ga)).epsilon(1e-7));
    CHECK(dbl(g[1]) == doctest::Approx(dbl(gb)).epsilon(1e-7));
  }
}

TEST_CASE("Hessian: analytic, finite differences, determinant and trace formulas") {
  for (int s = 2; s <= 8; ++s) {
    for (int r = 2; r <= 12; ++r) {
      if (r == 2 && s == 2) continue;
      const LaplacePoint x0 = stationary_point(r, s);
      const auto h = hessian_phi(x0, r, s);
      const long double w0 = 1 - (s - 1) * x0.alpha - x0.beta;
      const long double step = 1e-4L * std::min({x0.alpha, x0.beta, w0});
      const auto fd = fd_hessian(x0, r, s, step);
      CAPTURE(r);
      CAPTURE(s);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          CHECK(dbl(h[i][j]) == doctest::Approx(dbl(fd[i][j])).epsilon(1e-6));
        }
      }
      const long double det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
      CHECK(dbl(det) == doctest::Approx(dbl(det_neg_hessian_closed(r, s))).epsilon(1e-12));
      CHECK(dbl(h[0][0] + h[1][1]) == doctest::Approx(dbl(trace_hessian_closed(r, s))).epsilon(1e-13));
    }
  }
  CHECK(dbl(det_neg_hessian_closed(3, 2)) == 189.0 / 4);
  CHECK(dbl(trace_hessian_closed(3, 2)) == doctest::Approx(-16.5));
  CHECK(dbl(trace_hessian_closed(2, 3)) == doctest::Approx(-16.0));
}

TEST_CASE("negative definite exactly where the stationary point is the maximum") {
  for (int s = 2; s <= 8; ++s) {
    for (int r = 2; r <= 12; ++r) {
      if (r == 2 && s == 2) continue;
      const MaximizeResult m = maximize_phi(r, s);
      CAPTURE(r);
      CAPTURE(s);
      const bool super = classify(r, s) == Phase::Supercritical;
      CHECK((m.status == MaximizeStatus::Converged) == super);
      CHECK((m.status == MaximizeStatus::BoundaryMaximum) == !super);
      CHECK(m.origin_competitive == !super);
      if (super) {
        CHECK(m.distance_to_stationary < 1e-10);
        CHECK(m.grad_norm < 1e-12);
        CHECK(det_neg_hessian_closed(r, s) > 0);
        CHECK(trace_hessian_closed(r, s) < 0);
      } else {
        CHECK(dbl(m.argmax.alpha) == 0);
        CHECK(dbl(m.argmax.beta) == 0);
        CHECK(m.value >= m.phi_stationary);
      }
    }
  }
}

TEST_CASE("ridge") {
  for (auto [r, s] : kInterior) {
    const LaplacePoint p = ridge(0, r, s);
    const LaplacePoint x0 = stationary_point(r, s);
    CHECK(dbl(p.alpha) == doctest::Approx(dbl(x0.alpha)));
    CHECK(dbl(p.beta) == doctest::Approx(dbl(x0.beta)));
    CHECK(ridge_equation_residual(0, r, s) == 0);
  }
  // s <= 4: zero is the only root.
  for (int s = 2; s <= 4; ++s) {
    for (int r = 2; r <= 12; ++r) {
      if (r == 2 && s == 2) continue;
      const auto roots = ridge_roots(r, s);
      REQUIRE(roots.size() == 1);
      CHECK(std::fabs(dbl(roots[0])) < 1e-12);
    }
  }
  // s >= 5, r >= s - 1: nothing on (-1, 0), at most one positive root.
  for (int s = 5; s <= 8; ++s) {
    for (int r = s - 1; r <= 14; ++r) {
      int neg = 0, pos = 0;
      for (long double x : ridge_roots(r, s)) {
        neg += x < -1e-12L;
        pos += x > 1e-12L;
      }
      CHECK(neg == 0);
      CHECK(pos <= 1);
    }
  }
  // Roots really are roots.
  for (long double x : ridge_roots(4, 5)) CHECK(std::fabs(dbl(ridge_equation_residual(x, 4, 5))) < 1e-9);
  CHECK_THROWS_AS(ridge(-1, 3, 2), DomainError);
}

TEST_CASE("Laplace prefactors") {
  for (auto [r, s] : kInterior) {
    const LaplacePrefactors a = laplace_prefactors(r, s, 1000);
    CHECK(dbl(a.psi_direct) == doctest::Approx(dbl(a.psi_closed)).epsilon(1e-13));
    CHECK(dbl(a.lattice_det) == s - 1);
    CHECK(dbl(a.det_neg_h0) == doctest::Approx(dbl(det_neg_hessian_closed(r, s))));
  }
  CHECK(dbl(laplace_prefactors(3, 2, 10).psi_closed) == doctest::Approx(33.068112).epsilon(1e-7));
  CHECK(dbl(laplace_prefactors(2, 3, 9).psi_closed) == doctest::Approx(64.0).epsilon(1e-14));
  CHECK_THROWS_AS(laplace_prefactors(2, 5, 10), DomainError);
  CHECK_THROWS_AS(laplace_prefactors(3, 2, 0), ValidationError);
}

TEST_CASE("second-moment constant equals the variance-sum ratio") {
  for (auto [r, s] : kInterior) {
    for (std::int64_t start : {1000, 50000}) {
      const std::int64_t n = admissible_ladder(r, s, 1, start).front();
      const LaplacePrefactors a = laplace_prefactors(r, s, n);
      const long double log_ratio = a.log_EY2 - 2 * log_asymptotic_EY(validate_params(r, s, n));
      CAPTURE(r);
      CAPTURE(s);
      CHECK(dbl(std::exp(log_ratio)) == doctest::Approx(dbl(second_moment_ratio(r, s))).epsilon(1e-11));
    }
  }
}
