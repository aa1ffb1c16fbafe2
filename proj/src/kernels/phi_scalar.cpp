#include <cmath>
#include <limits>

#include "hypertree/kernels.hpp"

namespace hypertree::kernels {
namespace {

constexpr double kClamp = 1e-15;

// g(x) = x log x with g(0) = 0; false if x is meaningfully negative.
bool g_checked(double x, double& out) {
  if (x < -kClamp) return false;
  out = x <= 1e-300 ? 0.0 : x * std::log(x);
  return true;
}

}  // namespace

void log_batch_scalar(const double* x, double* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) out[i] = std::log(x[i]);
}

void phi_row_scalar(double alpha, const double* beta, std::size_t count, double r, double s,
                    double* out) {
  const double lr1 = std::log(r - 1);
  const double e = r * s - r - s;
  const double w0 = 1 - (s - 1) * alpha;
  double ga = 0;
  const bool alpha_ok = g_checked(alpha, ga);
  for (std::size_t i = 0; i < count; ++i) {
    const double b = beta[i];
    const double u = alpha + b;
    double gu, gv, gb, gz, gw;
    const bool ok = alpha_ok && g_checked(b, gb) && g_checked(u, gu) && g_checked(r - 1 - u, gv) &&
                    g_checked(e - s * b, gz) && g_checked(w0 - b, gw);
    out[i] = ok ? u * lr1 + gu + gv - 2 / (s - 1) * gb - ga - gz / (s * (s - 1)) - gw / (s - 1)
                : -std::numeric_limits<double>::infinity();
  }
}

}  // namespace hypertree::kernels
