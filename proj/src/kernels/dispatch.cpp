#include <cstdlib>
#include <cstring>

#include "hypertree/kernels.hpp"

namespace hypertree::kernels {

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa chosen = [] {
    const char* env = std::getenv("HYPERTREE_ISA");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
    return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  }();
  return chosen;
}

void log_batch(Isa isa, const double* x, double* out, std::size_t count) {
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) {
    log_batch_avx2(x, out, count);
  } else {
    log_batch_scalar(x, out, count);
  }
}

void phi_row(Isa isa, double alpha, const double* beta, std::size_t count, double r, double s,
             double* out) {
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) {
    phi_row_avx2(alpha, beta, count, r, s, out);
  } else {
    phi_row_scalar(alpha, beta, count, r, s, out);
  }
}

}  // namespace hypertree::kernels
