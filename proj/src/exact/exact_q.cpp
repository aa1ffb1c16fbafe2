#include "hypertree/exact_q.hpp"

#include <cmath>

#include "hypertree/error.hpp"

namespace hypertree {

ExactQ make_q(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("zero denominator");
  ExactQ q(num, den);
  q.canonicalize();
  return q;
}

mpz_class factorial(std::int64_t n) {
  if (n < 0) throw DomainError("factorial of negative integer " + std::to_string(n));
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

mpz_class binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

ExactQ gen_binomial(const ExactQ& x, std::int64_t k) {
  if (k < 0) return 0;
  ExactQ num = 1;
  for (std::int64_t i = 0; i < k; ++i) num *= x - i;
  return num / ExactQ(factorial(k));
}

mpz_class falling(std::int64_t x, std::int64_t k) {
  mpz_class out = 1;
  for (std::int64_t i = 0; i < k; ++i) out *= x - i;
  return out;
}

ExactQ pow_q(const ExactQ& base, std::int64_t e) {
  mpz_class num, den;
  const auto u = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), u);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), u);
  return e < 0 ? make_q(den, num) : make_q(num, den);
}

std::string to_string(const ExactQ& q) { return q.get_str(); }

ExactQ parse_q(const std::string& text) {
  ExactQ q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw ValidationError("not a rational: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

long double log_abs(const mpz_class& z) {
  if (z == 0) throw DomainError("log of zero");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(static_cast<long double>(mant))) +
         static_cast<long double>(exp) * std::log(2.0L);
}

long double log_abs(const ExactQ& q) { return log_abs(q.get_num()) - log_abs(q.get_den()); }

long double to_long_double(const ExactQ& q) {
  if (q == 0) return 0.0L;
  const long double mag = std::exp(log_abs(q));
  return q < 0 ? -mag : mag;
}

mpz_class require_integer(const ExactQ& q, const char* what) {
  if (q.get_den() != 1) {
    throw DomainError(std::string(what) + " is not an integer: " + q.get_str());
  }
  return q.get_num();
}

}  // namespace hypertree
