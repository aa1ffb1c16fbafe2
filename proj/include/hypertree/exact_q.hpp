#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace hypertree {

/// Exact rational. GMP keeps it reduced with a positive denominator.
using ExactQ = mpq_class;

/// num/den reduced. Raw mpq_class(num, den) does not reduce, and GMP
/// arithmetic on unreduced values is undefined.
ExactQ make_q(const mpz_class& num, const mpz_class& den);

mpz_class factorial(std::int64_t n);
mpz_class binomial(std::int64_t n, std::int64_t k);
/// C(x, k) = x(x-1)...(x-k+1)/k! for rational x; C(x, 0) = 1 for every x.
ExactQ gen_binomial(const ExactQ& x, std::int64_t k);
/// Falling factorial (x)_k.
mpz_class falling(std::int64_t x, std::int64_t k);
ExactQ pow_q(const ExactQ& base, std::int64_t e);

/// "p/q", or "p" for integers.
std::string to_string(const ExactQ& q);
/// Parses the output of to_string. Throws ValidationError on bad input.
ExactQ parse_q(const std::string& text);

/// Natural log of |q| without converting q to a float first. q != 0.
long double log_abs(const ExactQ& q);
long double log_abs(const mpz_class& z);
long double to_long_double(const ExactQ& q);

/// Numerator of q as an integer, or ValidationError naming `what` if q is
/// not integral.
mpz_class require_integer(const ExactQ& q, const char* what);

}  // namespace hypertree
