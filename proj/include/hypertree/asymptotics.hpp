#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hypertree/exact_q.hpp"
#include "hypertree/params.hpp"
#include "hypertree/series.hpp"

namespace hypertree {

/// lambda_j = D^j/(2j), zeta_j = (A^j - 2)/D^j with A = r/(r-1) - s + 1 and
/// D = (r-1)(s-1).
struct SpectralPair {
  int j = 1;
  ExactQ lambda;
  ExactQ zeta;
};

ExactQ spectral_A(int r, int s);
ExactQ spectral_D(int r, int s);
SpectralPair spectral_pair(int r, int s, int j);

/// Leading-order E Y in log space:
/// log E Y ~ log((s-1)sqrt(r-1)) - log n - (s+1)/(2(s-1)) log(rs-r-s) + n L(r,s).
/// Rejects (2,2).
long double log_asymptotic_EY(const ModelParams& params);

struct SimpleEYEstimate {
  long double log_EY = 0;         // log_asymptotic_EY
  long double log_EY_simple = 0;  // log_EY - lambda_1 zeta_1
  long double exponent = 0;       // -lambda_1 zeta_1 = (rs-s-1)/(2(r-1))
  long double printed_exponent = 0;  // (rs-r-1)/(2(r-1)) as printed for E Y_G
  bool exponents_differ = false;     // true unless r == s
};

/// E Y_G ~ exp(-lambda_1 zeta_1) E Y; also reports the alternative printed
/// prefactor so the two can be compared. Rejects (2,2).
SimpleEYEstimate asymptotic_EY_simple(const ModelParams& params);

/// mu = (rs-r-s)^2/(r-1) and beta = (r-2)/(rs-r-s). Rejects (2,2).
struct XiConstants {
  ExactQ mu;
  ExactQ beta;
};
XiConstants xi_constants(int r, int s);

/// xi_1..xi_jmax (index 0 holds xi_1) from the c_{j,l} recurrence.
std::vector<ExactQ> xi_by_recurrence(int r, int s, int j_max);
/// f(x) = mu (x^2/(1-x)^2 + beta x/(1-x)) to order j_max.
SeriesQ xi_generating_f(int r, int s, int j_max);
/// xi_j = -(1/2) [x^j] log(1 - f(x)).
std::vector<ExactQ> xi_by_series(int r, int s, int j_max);
/// lambda_j (1 + zeta_j).
std::vector<ExactQ> xi_closed(int r, int s, int j_max);

/// Whether the closed form for sum lambda_j zeta_j^2 applies:
/// r^2 - rs + r + s - 1 > 0 and |A^2/D|, |A/D|, |1/D| < 1.
bool variance_sum_applicable(int r, int s);

struct VarianceSum {
  long double closed = 0;     // exp(sum lambda_j zeta_j^2) in closed form
  long double numeric = 0;    // exp of the partial sum up to `terms`
  long double tail_bound = 0; // bound on the omitted part of the log-sum
  int terms = 0;
  std::vector<long double> partial_sums;  // log-sum after each term
};

/// Throws DomainError unless variance_sum_applicable(r, s).
VarianceSum variance_sum(int r, int s, long double tol = 1e-15L);

/// r^2 sqrt(s-1) / sqrt((r^2-rs+r+s-1)(rs-r-s)(r-1)). Throws DomainError
/// when the radicand is not positive.
long double second_moment_ratio(int r, int s);

/// Asymptotic probability that the projected hypergraph is simple.
long double prob_simple(int r, int s);

/// J(s): 3 for s = 2, else 2.
int w_start(int s);

/// Smallest j_max >= j_start with lambda_j zeta_j^2 < 1e-14 and the
/// geometric tail of sum lambda_j zeta_j^2 beyond it < 1e-12. Throws
/// DomainError when the series does not converge geometrically.
int w_jmax(int r, int s, int j_start);

/// Sampler for the truncated product prod_{j=j_start}^{j_max}
/// (1+zeta_j)^{Z_j} e^{-lambda_j zeta_j}, Z_j ~ Poisson(lambda_j) independent,
/// evaluated as exp(sum (Z_j - lambda_j) log1p(zeta_j) + lambda_j (log1p(zeta_j) - zeta_j)).
class WSampler {
 public:
  WSampler(int r, int s, int j_start, int j_max);

  long double sample(std::mt19937_64& rng) const;
  int j_start() const { return j_start_; }
  int j_max() const { return j_max_; }

 private:
  struct Term {
    long double lambda;
    long double zeta;
    long double log1p_zeta;  // unused when zeta == -1
    long double compensation;  // lambda (log1p(zeta) - zeta)
    bool zeta_is_minus_one;
  };
  int j_start_, j_max_;
  std::vector<Term> terms_;
  mutable std::vector<std::poisson_distribution<long long>> poisson_;
};

long double sample_W(int r, int s, int j_start, int j_max, std::uint64_t seed);

/// log1p(z) - z without cancellation for small |z|.
long double log1p_minus_x(long double z);

}  // namespace hypertree
