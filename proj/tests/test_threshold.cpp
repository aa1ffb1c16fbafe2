#include <doctest.h>

#include <cmath>

#include "hypertree/error.hpp"
#include "hypertree/threshold.hpp"

using namespace hypertree;

namespace {

double dbl(long double x) { return static_cast<double>(x); }

}  // namespace

TEST_CASE("rho values against the reference table") {
  const double expected[8][3] = {{3.021, 3.029, 4.021},       {8.420, 8.706, 9.420},
                                 {21.736, 22.142, 22.736},    {54.133, 54.606, 55.133},
                                 {133.079, 133.588, 134.079}, {326.718, 327.245, 327.718},
                                 {805.308, 805.844, 806.308}, {1996.906, 1997.444, 1997.906}};
  for (int s = 5; s <= 12; ++s) {
    const ThresholdReport rep = rho(s);
    CAPTURE(s);
    CHECK(dbl(round_half_up(rep.rho_minus, 3)) == doctest::Approx(expected[s - 5][0]).epsilon(1e-12));
    CHECK(dbl(round_half_up(rep.rho, 3)) == doctest::Approx(expected[s - 5][1]).epsilon(1e-12));
    CHECK(dbl(round_half_up(rep.rho_plus, 3)) == doctest::Approx(expected[s - 5][2]).epsilon(1e-12));
  }
}

TEST_CASE("rho is a root of L bracketed by the bounds") {
  for (int s = 5; s <= 16; ++s) {
    const ThresholdReport rep = rho(s);
    CAPTURE(s);
    CHECK(std::fabs(dbl(threshold_L(rep.rho, s))) < 1e-12);
    CHECK(rep.rho_minus < rep.rho);
    CHECK(rep.rho < rep.rho_plus);
    CHECK(threshold_L(rep.rho_minus, s) < 0);
    CHECK(threshold_L(rep.rho_plus, s) > 0);
    CHECK(rep.residual < 1e-12);
    // L increases through the root.
    CHECK(threshold_L_prime(rep.rho, s) > 0);
  }
}

TEST_CASE("L' and L'' agree with finite differences") {
  for (int s : {2, 3, 5, 8, 12}) {
    for (long double r : {3.5L, 7.25L, 40.0L, 900.0L}) {
      const long double h = 1e-4L * r;
      const long double fd1 = (threshold_L(r + h, s) - threshold_L(r - h, s)) / (2 * h);
      const long double fd2 = (threshold_L_prime(r + h, s) - threshold_L_prime(r - h, s)) / (2 * h);
      CAPTURE(s);
      CAPTURE(dbl(r));
      CHECK(dbl(threshold_L_prime(r, s)) == doctest::Approx(dbl(fd1)).epsilon(1e-7));
      CHECK(dbl(threshold_L_double_prime(r, s)) == doctest::Approx(dbl(fd2)).epsilon(1e-6));
    }
  }
}

TEST_CASE("inflection point zeroes L''") {
  for (int s = 5; s <= 12; ++s) {
    CHECK(std::fabs(dbl(threshold_L_double_prime(inflection_point(s), s))) < 1e-15);
  }
  CHECK_THROWS_AS(inflection_point(3), ValidationError);
}

TEST_CASE("expansion gap shrinks") {
  long double previous = 1e9;
  for (int s = 8; s <= 16; ++s) {
    const long double gap = std::fabs(rho_expansion(s) - rho(s).rho);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(std::fabs(rho_expansion(12) - rho(12).rho) < 0.05L);
}

TEST_CASE("phase classification matches the sign of L") {
  CHECK(classify(3, 2) == Phase::Supercritical);
  CHECK(classify(2, 3) == Phase::Supercritical);
  CHECK(classify(2, 4) == Phase::Supercritical);
  CHECK(classify(3, 5) == Phase::Subcritical);
  CHECK(classify(4, 5) == Phase::Supercritical);
  CHECK(classify(8, 6) == Phase::Subcritical);
  CHECK(classify(9, 6) == Phase::Supercritical);
  for (int s = 5; s <= 9; ++s) {
    for (int r = 2; r <= 200; ++r) {
      const bool positive = threshold_L(r, s) > 0;
      CHECK((classify(r, s) == Phase::Supercritical) == positive);
      CHECK(classify(r, s) == classify_with_rho(r, s, rho(s).rho));
    }
  }
  CHECK(std::string(phase_name(Phase::Subcritical)) == "subcritical");
}

TEST_CASE("rounding helpers") {
  CHECK(dbl(round_half_up(2.0045L, 3)) == doctest::Approx(2.005));
  CHECK(dbl(round_half_up(-2.0045L, 3)) == doctest::Approx(-2.005));
  CHECK(dbl(round_half_up(1997.4444L, 3)) == doctest::Approx(1997.444));
  CHECK(dbl(round_significant(-0.000465041L, 2)) == doctest::Approx(-0.00047));
  CHECK(dbl(round_significant(0.0121946L, 2)) == doctest::Approx(0.012));
  CHECK(dbl(round_significant(57.26L, 2)) == doctest::Approx(57.0));
}

TEST_CASE("L at the bounds") {
  const auto rows = table2(5, 12);
  REQUIRE(rows.size() == 8);
  for (const auto& r : rows) {
    CHECK(r.L_at_rho_minus < 0);
    CHECK(r.L_at_rho_plus > 0);
  }
  // Computed values, independent of any printed table.
  CHECK(dbl(round_significant(rows[0].L_at_rho_minus, 2)) == doctest::Approx(-0.00029));
  CHECK(dbl(round_significant(rows[0].L_at_rho_plus, 2)) == doctest::Approx(0.037));
  CHECK(dbl(round_significant(rows[1].L_at_rho_minus, 2)) == doctest::Approx(-0.0051));
  CHECK(dbl(round_significant(rows[1].L_at_rho_plus, 2)) == doctest::Approx(0.012));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(threshold_L(1.5L, 3), DomainError);
  CHECK_THROWS_AS(threshold_L(2, 2), DomainError);
  CHECK_THROWS_AS(rho(4), ValidationError);
  CHECK_THROWS_AS(table1(4, 6), ValidationError);
}
