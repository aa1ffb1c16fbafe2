#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace hypertree {

/// A point (alpha, beta) of K = {alpha, beta >= 0, (s-1)alpha + beta <= 1}.
struct LaplacePoint {
  long double alpha = 0;
  long double beta = 0;
};

bool in_K(const LaplacePoint& p, int s, long double tol = 1e-15L);

/// g(x) = x log x, g(0) = 0; x within 1e-15 below zero is clamped to 0.
long double g_xlogx(long double x);

/// phi(alpha, beta) at (r, s). Throws DomainError outside K or where an
/// argument of g is negative.
long double phi(const LaplacePoint& p, int r, int s);

/// Closed-form phi at the stationary point.
long double phi_stationary_closed(int r, int s);

/// (alpha0, beta0) = (1/(r(s-1)), (rs-r-s)/(r(s-1))).
LaplacePoint stationary_point(int r, int s);

/// (phi_alpha, phi_beta). Interior points only (DomainError otherwise).
std::array<long double, 2> grad_phi(const LaplacePoint& p, int r, int s);

/// Analytic Hessian [[phi_aa, phi_ab], [phi_ab, phi_bb]], with
/// u = alpha+beta, v = r-1-u, w = 1-(s-1)alpha-beta, z = rs-r-s-s beta:
///   phi_aa = 1/u - (s-1)/w - 1/alpha + 1/v
///   phi_ab = 1/u - 1/w + 1/v
///   phi_bb = 1/u + 1/v - (1/w + s/z + 2/beta)/(s-1)
std::array<std::array<long double, 2>, 2> hessian_phi(const LaplacePoint& p, int r, int s);

/// r^3 (s-1)^2 (r^2-rs+r+s-1) / ((r-1)^2 (rs-r-s)).
long double det_neg_hessian_closed(int r, int s);
/// The closed form for the trace of H0 (a negative number).
long double trace_hessian_closed(int r, int s);

/// alpha(x) = (1+x)/d, beta(x) = (rs-r-s)/d with d = rs-r+sx+x(x+1)/(r-1).
/// Requires x > -1.
LaplacePoint ridge(long double x, int r, int s);

/// (rs-r-s)(1+x/(r-1))^{s-2} - (1+x)(rs-r-s+sx+x(x+1)/(r-1)).
long double ridge_equation_residual(long double x, int r, int s);

/// Roots of the residual on (lo, hi), located by sign changes on `samples`
/// midpoints and refined by bisection.
std::vector<long double> ridge_roots(int r, int s, long double lo = -1, long double hi = 50,
                                     std::size_t samples = 20000);

enum class MaximizeStatus {
  Converged,          // interior stationary point with |grad| below tolerance
  BoundaryMaximum,    // best grid value sits on the boundary of K
  NotConverged,       // refinement stopped without meeting the tolerance
};

const char* status_name(MaximizeStatus s);

struct MaximizeResult {
  LaplacePoint argmax;
  long double value = 0;
  long double grad_norm = 0;
  long double phi_origin = 0;       // phi(0, 0)
  long double phi_stationary = 0;   // closed form at (alpha0, beta0)
  long double distance_to_stationary = 0;
  bool origin_competitive = false;  // phi(0,0) >= phi(alpha0, beta0)
  MaximizeStatus status = MaximizeStatus::NotConverged;
  int iterations = 0;
  const char* isa = "";
};

/// Grid scan of K (grid x grid) with the SIMD row kernel, then damped Newton
/// ascent from the best interior grid point until |grad| < grad_tol.
MaximizeResult maximize_phi(int r, int s, std::size_t grid = 400, long double grad_tol = 1e-12L);

struct LaplacePrefactors {
  long double log_b_n = 0;
  long double psi_closed = 0;  // psi(alpha0, beta0) in closed form
  long double psi_direct = 0;  // psi evaluated from its definition
  long double lattice_det = 0;  // det of Z x (s-1)Z
  long double det_neg_h0 = 0;
  long double constant = 0;    // 2 pi psi0 / (det(L) sqrt(det(-H0)))
  long double log_EY2 = 0;     // log(constant * b_n * n * e^{n phi0})
};

/// psi(alpha, beta) from its definition.
long double psi(const LaplacePoint& p, int r, int s);

LaplacePrefactors laplace_prefactors(int r, int s, long long n);

}  // namespace hypertree
