#pragma once

#include <cstddef>

namespace hypertree::kernels {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);
bool isa_available(Isa isa);
/// Best available ISA, unless HYPERTREE_ISA=scalar|avx2 says otherwise.
/// An unavailable request falls back to scalar.
Isa active_isa();

/// out[i] = log(x[i]) for positive normal x.
void log_batch(Isa isa, const double* x, double* out, std::size_t count);

/// out[i] = phi(alpha, beta[i]) for the second-moment exponent at (r, s), or
/// -infinity where an argument of g(x) = x log x is below -1e-15. Arguments
/// within 1e-15 of zero are clamped to g = 0.
void phi_row(Isa isa, double alpha, const double* beta, std::size_t count, double r, double s,
             double* out);

inline void phi_row(double alpha, const double* beta, std::size_t count, double r, double s,
                    double* out) {
  phi_row(active_isa(), alpha, beta, count, r, s, out);
}

// Implementations, exposed for equivalence tests.
void log_batch_scalar(const double* x, double* out, std::size_t count);
void log_batch_avx2(const double* x, double* out, std::size_t count);
void phi_row_scalar(double alpha, const double* beta, std::size_t count, double r, double s,
                    double* out);
void phi_row_avx2(double alpha, const double* beta, std::size_t count, double r, double s,
                  double* out);

}  // namespace hypertree::kernels
