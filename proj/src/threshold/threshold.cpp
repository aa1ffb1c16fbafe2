#include "hypertree/threshold.hpp"

#include <cmath>
#include <string>
#include <tuple>

#include "hypertree/error.hpp"

namespace hypertree {
namespace {

void check_domain(long double r, int s) {
  if (s < 2) throw ValidationError("L needs s >= 2");
  if (!(r > 1) || !(r * s - r - s > 0)) {
    throw DomainError("L(r, s) needs r > s/(s-1); got r = " + std::to_string(static_cast<double>(r)) +
                      ", s = " + std::to_string(s));
  }
}

}  // namespace

long double threshold_L(long double r, int s) {
  check_domain(r, s);
  const long double ss = s;
  const long double e = r * ss - r - ss;
  return r / ss * std::log(ss - 1) + (r - 1) * std::log(r - 1) - e / ss * std::log(r) -
         e / (ss * (ss - 1)) * std::log(e);
}

long double threshold_L_prime(long double r, int s) {
  check_domain(r, s);
  const long double ss = s;
  return 1 / r + std::log(r - 1) - (ss - 1) / ss * std::log(r) - std::log(r - ss / (ss - 1)) / ss;
}

long double threshold_L_double_prime(long double r, int s) {
  check_domain(r, s);
  const long double ss = s;
  return (1 / (r * r)) * (1 / (r - 1) - r / (r * ss - r - ss));
}

long double inflection_point(int s) {
  if (s < 4) throw ValidationError("inflection point needs s >= 4");
  const long double ss = s;
  return (ss + std::sqrt(ss * (ss - 4))) / 2;
}

std::pair<long double, long double> rho_bounds(int s) {
  if (s < 5) throw ValidationError("rho bounds need s >= 5");
  const long double lead = std::exp(static_cast<long double>(s - 2)) / (s - 1);
  return {lead - (s - 1) / 2.0L, lead - (s - 3) / 2.0L};
}

long double rho_expansion(int s) {
  if (s < 5) throw ValidationError("rho expansion needs s >= 5");
  const long double ss = s;
  return std::exp(ss - 2) / (ss - 1) - (ss * ss - 3 * ss + 1) / (2 * (ss - 1));
}

ThresholdReport rho(int s) {
  if (s < 5) throw ValidationError("rho(s) needs s >= 5; L(r, s) > 0 for all admissible r when s <= 4");
  ThresholdReport rep;
  rep.s = s;
  std::tie(rep.rho_minus, rep.rho_plus) = rho_bounds(s);
  rep.expansion = rho_expansion(s);
  long double lo = (s == 5 ? 2.0L : static_cast<long double>(s)) + 1e-9L;
  long double hi = rep.rho_plus + 1;
  rep.bracket = {lo, hi};
  if (!(threshold_L(lo, s) < 0 && threshold_L(hi, s) > 0)) {
    throw DomainError("no sign change of L on the bracket for s = " + std::to_string(s));
  }
  // Bisection to a narrow bracket, then Newton steps kept inside it.
  while (hi - lo > 1e-6L * hi) {
    const long double mid = (lo + hi) / 2;
    (threshold_L(mid, s) < 0 ? lo : hi) = mid;
    ++rep.iterations;
  }
  long double x = (lo + hi) / 2;
  for (int i = 0; i < 50; ++i) {
    const long double f = threshold_L(x, s);
    if (f < 0) lo = x; else hi = x;
    long double next = x - f / threshold_L_prime(x, s);
    if (!(next > lo && next < hi)) next = (lo + hi) / 2;
    ++rep.iterations;
    if (std::fabs(next - x) <= 1e-18L * x) {
      x = next;
      break;
    }
    x = next;
  }
  rep.rho = x;
  rep.residual = std::fabs(threshold_L(x, s));
  const long double ss = s;
  const long double e = x * ss - x - ss;
  const long double lhs = x * std::log(ss - 1) + ss * (x - 1) * std::log(x - 1);
  const long double rhs = e * std::log(x) + e / (ss - 1) * std::log(e);
  rep.defining_gap = std::fabs(lhs - rhs);
  return rep;
}

const char* phase_name(Phase p) {
  return p == Phase::Supercritical ? "supercritical" : "subcritical";
}

Phase classify_with_rho(int r, int s, long double rho_value) {
  if (r < 2 || s < 2) throw ValidationError("classify needs r, s >= 2");
  if (r == 2 && s == 2) return Phase::Subcritical;
  if (s <= 4) return Phase::Supercritical;
  return static_cast<long double>(r) > rho_value ? Phase::Supercritical : Phase::Subcritical;
}

Phase classify(int r, int s) {
  if (r < 2 || s < 2) throw ValidationError("classify needs r, s >= 2");
  if (s <= 4) return classify_with_rho(r, s, 0);
  return classify_with_rho(r, s, rho(s).rho);
}

long double round_half_up(long double x, int decimals) {
  const long double scale = std::pow(10.0L, static_cast<long double>(decimals));
  const long double scaled = std::fabs(x) * scale;
  const long double rounded = std::floor(scaled + 0.5L) / scale;
  return x < 0 ? -rounded : rounded;
}

long double round_significant(long double x, int digits) {
  if (x == 0) return 0;
  const int magnitude = static_cast<int>(std::floor(std::log10(std::fabs(x))));
  return round_half_up(x, digits - 1 - magnitude);
}

std::vector<Table1Row> table1(int s_lo, int s_hi) {
  if (s_lo < 5 || s_hi < s_lo) throw ValidationError("table 1 needs 5 <= s_lo <= s_hi");
  std::vector<Table1Row> rows;
  for (int s = s_lo; s <= s_hi; ++s) {
    const ThresholdReport rep = rho(s);
    rows.push_back({s, rep.rho_minus, rep.rho, rep.rho_plus});
  }
  return rows;
}

std::vector<Table2Row> table2(int s_lo, int s_hi) {
  if (s_lo < 5 || s_hi < s_lo) throw ValidationError("table 2 needs 5 <= s_lo <= s_hi");
  std::vector<Table2Row> rows;
  for (int s = s_lo; s <= s_hi; ++s) {
    const auto [lo, hi] = rho_bounds(s);
    rows.push_back({s, threshold_L(lo, s), threshold_L(hi, s)});
  }
  return rows;
}

}  // namespace hypertree
