#include "hypertree/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypertree/error.hpp"

namespace hypertree {
namespace {

void reject_2_2(int r, int s, const char* what) {
  if (r < 2 || s < 2) throw ValidationError(std::string(what) + " needs r, s >= 2");
  if (r == 2 && s == 2) throw ValidationError(std::string(what) + " is undefined at (r,s) = (2,2)");
}

struct RealSpectrum {
  long double A;
  long double D;
};

RealSpectrum real_spectrum(int r, int s) {
  const long double rr = r, ss = s;
  return {rr / (rr - 1) - ss + 1, (rr - 1) * (ss - 1)};
}

// Geometric ratios of the three series making up lambda_j zeta_j^2.
struct TailRatios {
  long double a2_over_d, a_over_d, one_over_d;
  bool converge() const { return a2_over_d < 1 && a_over_d < 1 && one_over_d < 1; }
};

TailRatios tail_ratios(int r, int s) {
  const auto [A, D] = real_spectrum(r, s);
  return {A * A / D, std::fabs(A) / D, 1 / D};
}

long double lambda_zeta2(const RealSpectrum& sp, int j) {
  const long double aj = std::pow(sp.A, static_cast<long double>(j));
  const long double dj = std::pow(sp.D, static_cast<long double>(j));
  const long double num = aj - 2;
  return num * num / (2.0L * j * dj);
}

// Upper bound for sum_{i > j} lambda_i zeta_i^2 using
// (A^i - 2)^2 <= A^{2i} + 4|A|^i + 4 and 1/(2i) <= 1/(2(j+1)).
long double tail_bound_after(const TailRatios& q, int j) {
  auto geo = [j](long double ratio) {
    return std::pow(ratio, static_cast<long double>(j + 1)) / (1 - ratio);
  };
  return (geo(q.a2_over_d) + 4 * geo(q.a_over_d) + 4 * geo(q.one_over_d)) / (2.0L * (j + 1));
}

}  // namespace

ExactQ spectral_A(int r, int s) { return make_q(r, r - 1) - s + 1; }
ExactQ spectral_D(int r, int s) { return ExactQ((r - 1) * (s - 1)); }

SpectralPair spectral_pair(int r, int s, int j) {
  if (r < 2 || s < 2) throw ValidationError("spectral pair needs r, s >= 2");
  if (j < 1) throw ValidationError("spectral pair needs j >= 1");
  const ExactQ dj = pow_q(spectral_D(r, s), j);
  SpectralPair p;
  p.j = j;
  p.lambda = dj / (2 * j);
  p.zeta = (pow_q(spectral_A(r, s), j) - 2) / dj;
  return p;
}

long double log_asymptotic_EY(const ModelParams& params) {
  reject_2_2(params.r, params.s, "asymptotic E Y");
  const long double r = params.r, s = params.s, n = static_cast<long double>(params.n);
  const long double e = r * s - r - s;
  const long double base = r * std::log(s - 1) + (r - 1) * s * std::log(r - 1) - e * std::log(r) -
                           e / (s - 1) * std::log(e);
  return std::log(s - 1) + 0.5L * std::log(r - 1) - std::log(n) -
         (s + 1) / (2 * (s - 1)) * std::log(e) + n / s * base;
}

SimpleEYEstimate asymptotic_EY_simple(const ModelParams& params) {
  SimpleEYEstimate out;
  out.log_EY = log_asymptotic_EY(params);
  const SpectralPair p1 = spectral_pair(params.r, params.s, 1);
  out.exponent = to_long_double(-p1.lambda * p1.zeta);
  out.log_EY_simple = out.log_EY + out.exponent;
  out.printed_exponent = to_long_double(make_q(params.r * params.s - params.r - 1, 2 * (params.r - 1)));
  out.exponents_differ = -p1.lambda * p1.zeta != make_q(params.r * params.s - params.r - 1, 2 * (params.r - 1));
  return out;
}

XiConstants xi_constants(int r, int s) {
  reject_2_2(r, s, "xi");
  const ExactQ e(r * s - r - s);
  return {e * e / (r - 1), ExactQ(r - 2) / e};
}

std::vector<ExactQ> xi_by_recurrence(int r, int s, int j_max) {
  if (j_max < 1) throw ValidationError("xi needs j_max >= 1");
  const auto [mu, beta] = xi_constants(r, s);
  const auto J = static_cast<std::size_t>(j_max);
  // c[j][l], 1-based.
  std::vector<std::vector<ExactQ>> c(J + 1, std::vector<ExactQ>(J + 1, ExactQ(0)));
  for (std::size_t j = 1; j <= J; ++j) c[j][1] = mu * (ExactQ(static_cast<long>(j) - 1) + beta);
  for (std::size_t l = 2; l <= J; ++l) {
    for (std::size_t j = l; j <= J; ++j) {
      ExactQ acc = 0;
      for (std::size_t k = 0; k + 2 <= j; ++k) acc += (ExactQ(static_cast<long>(k)) + beta) * c[j - k - 1][l - 1];
      c[j][l] = mu * acc;
    }
  }
  std::vector<ExactQ> xi(J);
  for (std::size_t j = 1; j <= J; ++j) {
    ExactQ acc = 0;
    for (std::size_t l = 1; l <= j; ++l) acc += c[j][l] / static_cast<long>(l);
    xi[j - 1] = acc / 2;
  }
  return xi;
}

SeriesQ xi_generating_f(int r, int s, int j_max) {
  const auto [mu, beta] = xi_constants(r, s);
  const auto ord = static_cast<std::size_t>(j_max);
  const SeriesQ geo = SeriesQ::geometric(ord, 1);  // 1/(1-x)
  const SeriesQ x = SeriesQ::monomial(ord, 1);
  const SeriesQ x_over = x * geo;
  return mu * (x_over * x_over + beta * x_over);
}

std::vector<ExactQ> xi_by_series(int r, int s, int j_max) {
  if (j_max < 1) throw ValidationError("xi needs j_max >= 1");
  const auto ord = static_cast<std::size_t>(j_max);
  const SeriesQ one_minus_f = SeriesQ::monomial(ord, 0) - xi_generating_f(r, s, j_max);
  const SeriesQ lg = one_minus_f.log();
  std::vector<ExactQ> xi(ord);
  for (std::size_t j = 1; j <= ord; ++j) xi[j - 1] = -lg[j] / 2;
  return xi;
}

std::vector<ExactQ> xi_closed(int r, int s, int j_max) {
  std::vector<ExactQ> xi;
  for (int j = 1; j <= j_max; ++j) {
    const SpectralPair p = spectral_pair(r, s, j);
    xi.push_back(p.lambda * (1 + p.zeta));
  }
  return xi;
}

bool variance_sum_applicable(int r, int s) {
  if (r < 2 || s < 2) return false;
  if (r * r - r * s + r + s - 1 <= 0 || r * s - r - s <= 0) return false;
  return tail_ratios(r, s).converge();
}

VarianceSum variance_sum(int r, int s, long double tol) {
  if (!variance_sum_applicable(r, s)) {
    throw DomainError("variance sum closed form does not apply at (" + std::to_string(r) + "," +
                      std::to_string(s) + ")");
  }
  VarianceSum out;
  out.closed = second_moment_ratio(r, s);
  const RealSpectrum sp = real_spectrum(r, s);
  const TailRatios q = tail_ratios(r, s);
  long double sum = 0;
  for (int j = 1; j <= 100000; ++j) {
    sum += lambda_zeta2(sp, j);
    out.partial_sums.push_back(sum);
    out.terms = j;
    out.tail_bound = tail_bound_after(q, j);
    if (out.tail_bound < tol) break;
  }
  out.numeric = std::exp(sum);
  return out;
}

long double second_moment_ratio(int r, int s) {
  const long double rr = r, ss = s;
  const long double radicand =
      (rr * rr - rr * ss + rr + ss - 1) * (rr * ss - rr - ss) * (rr - 1);
  if (!(radicand > 0)) {
    throw DomainError("second moment ratio undefined at (" + std::to_string(r) + "," +
                      std::to_string(s) + ")");
  }
  return rr * rr * std::sqrt(ss - 1) / std::sqrt(radicand);
}

long double prob_simple(int r, int s) {
  if (r < 2 || s < 2) throw ValidationError("prob_simple needs r, s >= 2");
  const long double rr = r, ss = s;
  if (s == 2) return std::exp(-(rr * rr - 1) / 4);
  return std::exp(-(rr - 1) * (ss - 1) / 2);
}

int w_start(int s) { return s == 2 ? 3 : 2; }

int w_jmax(int r, int s, int j_start) {
  if (r < 2 || s < 2 || j_start < 1) throw ValidationError("w_jmax needs r, s >= 2 and j_start >= 1");
  const TailRatios q = tail_ratios(r, s);
  if (!q.converge()) {
    throw DomainError("sum lambda_j zeta_j^2 does not converge geometrically at (" +
                      std::to_string(r) + "," + std::to_string(s) + "); pass j_max explicitly");
  }
  const RealSpectrum sp = real_spectrum(r, s);
  for (int j = j_start; j < 100000; ++j) {
    if (lambda_zeta2(sp, j) < 1e-14L && tail_bound_after(q, j) < 1e-12L) return j;
  }
  throw DomainError("no j_max found by the tail rule");
}

long double log1p_minus_x(long double z) {
  if (std::fabs(z) < 1e-2L) {
    // -z^2/2 + z^3/3 - z^4/4 + ...
    long double acc = 0;
    long double power = z * z;
    for (int k = 2; k < 40; ++k) {
      const long double term = ((k % 2 == 0) ? -1.0L : 1.0L) * power / k;
      acc += term;
      power *= z;
      if (std::fabs(term) < 1e-22L * std::fabs(acc)) break;
    }
    return acc;
  }
  return std::log1p(z) - z;
}

WSampler::WSampler(int r, int s, int j_start, int j_max) : j_start_(j_start), j_max_(j_max) {
  if (r < 2 || s < 2) throw ValidationError("W sampler needs r, s >= 2");
  if (j_start < 1 || j_max < j_start) throw ValidationError("W sampler needs 1 <= j_start <= j_max");
  for (int j = j_start; j <= j_max; ++j) {
    const SpectralPair p = spectral_pair(r, s, j);
    Term t{};
    t.lambda = to_long_double(p.lambda);
    if (t.lambda > 1e18L) throw DomainError("lambda_j too large to sample at j = " + std::to_string(j));
    t.zeta = to_long_double(p.zeta);
    t.zeta_is_minus_one = p.zeta == -1;
    if (!t.zeta_is_minus_one) {
      t.log1p_zeta = std::log1p(t.zeta);
      t.compensation = t.lambda * log1p_minus_x(t.zeta);
    }
    terms_.push_back(t);
    poisson_.emplace_back(static_cast<double>(t.lambda));
  }
}

long double WSampler::sample(std::mt19937_64& rng) const {
  long double acc = 0;
  bool zero = false;
  // Draw every Z_j even after a zero so the stream layout is fixed per sample.
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    const long long z = poisson_[i](rng);
    if (t.zeta_is_minus_one) {
      if (z > 0) zero = true;
      acc += t.lambda;
      continue;
    }
    acc += (static_cast<long double>(z) - t.lambda) * t.log1p_zeta + t.compensation;
  }
  return zero ? 0.0L : std::exp(acc);
}

long double sample_W(int r, int s, int j_start, int j_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return WSampler(r, s, j_start, j_max).sample(rng);
}

}  // namespace hypertree
