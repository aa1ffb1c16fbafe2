#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace hypertree {

/// Exponential growth rate of E Y per vertex:
/// L(r,s) = (r/s)log(s-1) + (r-1)log(r-1) - ((rs-r-s)/s)log r
///          - ((rs-r-s)/(s(s-1)))log(rs-r-s).
/// Real r; throws DomainError unless r > 1 and rs - r - s > 0.
long double threshold_L(long double r, int s);
long double threshold_L_prime(long double r, int s);
long double threshold_L_double_prime(long double r, int s);

/// The inflection point (s + sqrt(s(s-4)))/2 of L(., s), for s >= 4.
long double inflection_point(int s);

struct ThresholdReport {
  int s = 0;
  long double rho = 0;
  long double rho_minus = 0;
  long double rho_plus = 0;
  long double expansion = 0;
  std::pair<long double, long double> bracket{0, 0};
  long double residual = 0;    // |L(rho, s)|
  long double defining_gap = 0;  // |log lhs - log rhs| of the defining equation
  int iterations = 0;
};

/// Root of L(., s) on (max(2, s), rho_plus + 1], s >= 5. Throws
/// ValidationError for s < 5 and DomainError if the bracket has no sign change.
ThresholdReport rho(int s);

/// (e^{s-2}/(s-1) - (s-1)/2, e^{s-2}/(s-1) - (s-3)/2).
std::pair<long double, long double> rho_bounds(int s);

/// e^{s-2}/(s-1) - (s^2-3s+1)/(2(s-1)).
long double rho_expansion(int s);

enum class Phase { Subcritical, Supercritical };

const char* phase_name(Phase p);

/// Supercritical iff s in {2,3,4} with (r,s) != (2,2), or s >= 5 with
/// r > rho(s). r == rho(s) counts as subcritical.
Phase classify(int r, int s);
/// Same rule with the threshold supplied by the caller (for s >= 5).
Phase classify_with_rho(int r, int s, long double rho_value);

/// x rounded half away from zero to `decimals` places.
long double round_half_up(long double x, int decimals);
/// x rounded to `digits` significant figures.
long double round_significant(long double x, int digits);

struct Table1Row {
  int s;
  long double rho_minus, rho, rho_plus;
};
struct Table2Row {
  int s;
  long double L_at_rho_minus, L_at_rho_plus;
};

/// Unrounded rows; callers round for display.
std::vector<Table1Row> table1(int s_lo, int s_hi);
std::vector<Table2Row> table2(int s_lo, int s_hi);

}  // namespace hypertree
