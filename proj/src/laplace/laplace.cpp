#include "hypertree/laplace.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hypertree/error.hpp"
#include "hypertree/kernels.hpp"

namespace hypertree {
namespace {

constexpr long double kClamp = 1e-15L;

void check_rs(int r, int s) {
  if (r < 2 || s < 2) throw ValidationError("phi needs r, s >= 2");
}

long double clamp0(long double x, const char* what) {
  if (x < -kClamp) throw DomainError(std::string("phi argument ") + what + " is negative");
  return x < 0 ? 0 : x;
}

struct Parts {
  long double u, v, w, z;
};

Parts parts(const LaplacePoint& p, int r, int s) {
  const long double rr = r, ss = s;
  return {p.alpha + p.beta, rr - 1 - p.alpha - p.beta, 1 - (ss - 1) * p.alpha - p.beta,
          rr * ss - rr - ss - ss * p.beta};
}

void require_interior(const LaplacePoint& p, int r, int s) {
  const Parts q = parts(p, r, s);
  if (!(p.alpha > 0 && p.beta > 0 && q.v > 0 && q.w > 0 && q.z > 0)) {
    throw DomainError("derivatives of phi need an interior point");
  }
}

}  // namespace

bool in_K(const LaplacePoint& p, int s, long double tol) {
  return p.alpha >= -tol && p.beta >= -tol && (s - 1) * p.alpha + p.beta <= 1 + tol;
}

long double g_xlogx(long double x) {
  x = clamp0(x, "of g");
  return x == 0 ? 0 : x * std::log(x);
}

long double phi(const LaplacePoint& p, int r, int s) {
  check_rs(r, s);
  if (!in_K(p, s, kClamp)) throw DomainError("phi evaluated outside K");
  const long double ss = s;
  const Parts q = parts(p, r, s);
  const long double a = clamp0(p.alpha, "alpha"), b = clamp0(p.beta, "beta");
  return q.u * std::log(static_cast<long double>(r - 1)) + g_xlogx(q.u) + g_xlogx(clamp0(q.v, "r-1-alpha-beta")) -
         2 / (ss - 1) * g_xlogx(b) - g_xlogx(a) -
         g_xlogx(clamp0(q.z, "rs-r-s-s beta")) / (ss * (ss - 1)) -
         g_xlogx(clamp0(q.w, "1-(s-1)alpha-beta")) / (ss - 1);
}

long double phi_stationary_closed(int r, int s) {
  check_rs(r, s);
  const long double rr = r, ss = s, e = rr * ss - rr - ss;
  const long double ge = e > 0 ? std::log(e) : 0;
  return 2 * (rr - 1) * std::log(rr - 1) - 2 * e / (ss * (ss - 1)) * ge + rr / ss * std::log(ss - 1) -
         e / ss * std::log(rr);
}

LaplacePoint stationary_point(int r, int s) {
  check_rs(r, s);
  const long double rr = r, ss = s;
  return {1 / (rr * (ss - 1)), (rr * ss - rr - ss) / (rr * (ss - 1))};
}

std::array<long double, 2> grad_phi(const LaplacePoint& p, int r, int s) {
  check_rs(r, s);
  require_interior(p, r, s);
  const Parts q = parts(p, r, s);
  const long double r1 = r - 1, s1 = s - 1;
  return {std::log(q.u * r1 * q.w / (p.alpha * q.v)),
          std::log(q.u * r1 / q.v) + std::log(q.w * q.z / (p.beta * p.beta)) / s1};
}

std::array<std::array<long double, 2>, 2> hessian_phi(const LaplacePoint& p, int r, int s) {
  check_rs(r, s);
  require_interior(p, r, s);
  const Parts q = parts(p, r, s);
  const long double s1 = s - 1;
  const long double aa = 1 / q.u - s1 / q.w - 1 / p.alpha + 1 / q.v;
  const long double ab = 1 / q.u - 1 / q.w + 1 / q.v;
  const long double bb = 1 / q.u + 1 / q.v - (1 / q.w + s / q.z + 2 / p.beta) / s1;
  return {{{aa, ab}, {ab, bb}}};
}

long double det_neg_hessian_closed(int r, int s) {
  const long double rr = r, ss = s;
  return rr * rr * rr * (ss - 1) * (ss - 1) * (rr * rr - rr * ss + rr + ss - 1) /
         ((rr - 1) * (rr - 1) * (rr * ss - rr - ss));
}

long double trace_hessian_closed(int r, int s) {
  const long double rr = r, ss = s, e = rr * ss - rr - ss;
  return -(rr * rr / ((rr - 1) * e * e) + rr * (2 * rr - 1) / ((rr - 1) * e) +
           (rr * rr - 4 * rr + 1) * rr / ((rr - 1) * (rr - 1)) + rr * ss * (ss - 1));
}

LaplacePoint ridge(long double x, int r, int s) {
  check_rs(r, s);
  if (!(x > -1)) throw DomainError("ridge needs x > -1");
  const long double rr = r, ss = s;
  const long double d = rr * ss - rr + ss * x + x * (x + 1) / (rr - 1);
  return {(1 + x) / d, (rr * ss - rr - ss) / d};
}

long double ridge_equation_residual(long double x, int r, int s) {
  check_rs(r, s);
  const long double rr = r, ss = s, e = rr * ss - rr - ss;
  return e * std::pow(1 + x / (rr - 1), ss - 2) - (1 + x) * (e + ss * x + x * (x + 1) / (rr - 1));
}

std::vector<long double> ridge_roots(int r, int s, long double lo, long double hi,
                                     std::size_t samples) {
  std::vector<long double> roots;
  if (samples < 2 || !(hi > lo)) return roots;
  const long double h = (hi - lo) / samples;
  long double x_prev = lo + h / 2;
  long double f_prev = ridge_equation_residual(x_prev, r, s);
  for (std::size_t k = 1; k < samples; ++k) {
    const long double x = lo + (k + 0.5L) * h;
    const long double f = ridge_equation_residual(x, r, s);
    if (f == 0) {
      roots.push_back(x);
    } else if (f_prev != 0 && (f < 0) != (f_prev < 0)) {
      long double a = x_prev, b = x, fa = f_prev;
      for (int it = 0; it < 200 && b - a > 0; ++it) {
        const long double m = (a + b) / 2;
        if (m <= a || m >= b) break;
        const long double fm = ridge_equation_residual(m, r, s);
        if (fm == 0) {
          a = b = m;
          break;
        }
        if ((fm < 0) == (fa < 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back((a + b) / 2);
    }
    x_prev = x;
    f_prev = f;
  }
  return roots;
}

const char* status_name(MaximizeStatus s) {
  switch (s) {
    case MaximizeStatus::Converged: return "converged";
    case MaximizeStatus::BoundaryMaximum: return "boundary-maximum";
    case MaximizeStatus::NotConverged: return "not-converged";
  }
  return "unknown";
}

MaximizeResult maximize_phi(int r, int s, std::size_t grid, long double grad_tol) {
  check_rs(r, s);
  if (grid < 4) throw ValidationError("maximize_phi needs grid >= 4");
  MaximizeResult res;
  const kernels::Isa isa = kernels::active_isa();
  res.isa = kernels::isa_name(isa);
  res.phi_origin = phi({0, 0}, r, s);
  res.phi_stationary = phi_stationary_closed(r, s);
  res.origin_competitive = res.phi_origin >= res.phi_stationary;

  const double a_max = 1.0 / (s - 1);
  std::vector<double> betas(grid + 1), row(grid + 1);
  for (std::size_t j = 0; j <= grid; ++j) betas[j] = static_cast<double>(j) / grid;
  double best = -std::numeric_limits<double>::infinity();
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i <= grid; ++i) {
    const double a = a_max * static_cast<double>(i) / grid;
    kernels::phi_row(isa, a, betas.data(), betas.size(), r, s, row.data());
    for (std::size_t j = 0; j <= grid; ++j) {
      if (row[j] > best) {
        best = row[j];
        bi = i;
        bj = j;
      }
    }
  }
  LaplacePoint x{static_cast<long double>(a_max) * bi / grid, static_cast<long double>(bj) / grid};
  const Parts q0 = parts(x, r, s);
  const long double step = 1.0L / grid;
  const bool boundary = bi == 0 || bj == 0 || q0.w < step || q0.z < step || q0.v < step;
  auto finish = [&](MaximizeStatus status) {
    res.status = status;
    res.argmax = x;
    res.value = phi(x, r, s);
    const LaplacePoint st = stationary_point(r, s);
    res.distance_to_stationary = std::hypot(x.alpha - st.alpha, x.beta - st.beta);
    return res;
  };
  if (boundary) return finish(MaximizeStatus::BoundaryMaximum);

  auto interior = [&](const LaplacePoint& p) {
    const Parts q = parts(p, r, s);
    return p.alpha > 0 && p.beta > 0 && q.v > 0 && q.w > 0 && q.z > 0;
  };
  for (int it = 0; it < 200; ++it) {
    const auto g = grad_phi(x, r, s);
    res.grad_norm = std::hypot(g[0], g[1]);
    res.iterations = it;
    if (res.grad_norm < grad_tol) return finish(MaximizeStatus::Converged);
    const auto h = hessian_phi(x, r, s);
    const long double det = h[0][0] * h[1][1] - h[0][1] * h[0][1];
    LaplacePoint dir;
    if (h[0][0] < 0 && det > 0) {
      // Newton direction -H^{-1} g.
      dir.alpha = -(h[1][1] * g[0] - h[0][1] * g[1]) / det;
      dir.beta = -(-h[0][1] * g[0] + h[0][0] * g[1]) / det;
    } else {
      dir = {g[0] * 1e-3L, g[1] * 1e-3L};
    }
    const long double f0 = phi(x, r, s);
    long double t = 1;
    LaplacePoint next;
    for (int back = 0; back < 60; ++back, t /= 2) {
      next = {x.alpha + t * dir.alpha, x.beta + t * dir.beta};
      if (!interior(next)) continue;
      const auto gn = grad_phi(next, r, s);
      if (phi(next, r, s) >= f0 || std::hypot(gn[0], gn[1]) < res.grad_norm) break;
    }
    if (!interior(next)) break;
    x = next;
  }
  const auto g = grad_phi(x, r, s);
  res.grad_norm = std::hypot(g[0], g[1]);
  return finish(res.grad_norm < grad_tol ? MaximizeStatus::Converged : MaximizeStatus::NotConverged);
}

long double psi(const LaplacePoint& p, int r, int s) {
  check_rs(r, s);
  require_interior(p, r, s);
  const long double rr = r, ss = s;
  const long double a = p.alpha, b = p.beta;
  const long double num = std::sqrt(rr - 1 - a - b);
  const long double den = std::pow(a + b, 1.5L) *
                          std::pow(rr * ss - rr - ss * (1 + b), 0.5L + 2 / (ss - 1)) *
                          std::pow(b, 1 - 2 / (ss - 1)) * std::sqrt(a) *
                          std::sqrt(1 - b - (ss - 1) * a);
  return num / den;
}

LaplacePrefactors laplace_prefactors(int r, int s, long long n) {
  check_rs(r, s);
  if (n < 1) throw ValidationError("laplace prefactors need n >= 1");
  if (r * s - r - s <= 0) throw DomainError("laplace prefactors undefined at (2,2)");
  const long double rr = r, ss = s, nn = static_cast<long double>(n), e = rr * ss - rr - ss;
  LaplacePrefactors out;
  out.log_b_n = 2 * std::log(ss - 1) - std::log(2 * std::numbers::pi_v<long double>) -
                3 * std::log(nn) + nn * (rr / ss * std::log(ss - 1) - e / ss * std::log(rr));
  out.psi_closed = std::pow(rr, 3.5L) * std::pow(ss - 1, 2.5L) /
                   (std::sqrt(rr - 1) * std::pow(e, 2 * ss / (ss - 1)));
  out.psi_direct = psi(stationary_point(r, s), r, s);
  out.lattice_det = ss - 1;
  out.det_neg_h0 = det_neg_hessian_closed(r, s);
  if (!(out.det_neg_h0 > 0)) throw DomainError("stationary point of phi is not a strict maximum");
  out.constant = 2 * std::numbers::pi_v<long double> * out.psi_closed /
                 (out.lattice_det * std::sqrt(out.det_neg_h0));
  out.log_EY2 = std::log(out.constant) + out.log_b_n + std::log(nn) + nn * phi_stationary_closed(r, s);
  return out;
}

}  // namespace hypertree
