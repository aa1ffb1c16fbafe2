#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "hypertree/error.hpp"
#include "hypertree/kernels.hpp"
#include "hypertree/laplace.hpp"

using namespace hypertree;
using kernels::Isa;

namespace {

std::vector<double> log_inputs() {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> expo(-690.0, 690.0);
  std::uniform_real_distribution<double> near1(0.5, 2.0);
  std::vector<double> xs = {1.0, 2.0, 0.5, std::nextafter(1.0, 0.0), std::nextafter(1.0, 2.0), 1e-300, 1e300,
                            std::numeric_limits<double>::min(), 3.0, 10.0, 0.1};
  for (int i = 0; i < 5000; ++i) xs.push_back(std::exp(expo(rng)));
  for (int i = 0; i < 5000; ++i) xs.push_back(near1(rng));
  for (int i = 0; i < 101; ++i) xs.push_back(1.0 + (i - 50) * 1e-10);
  return xs;
}

}  // namespace

TEST_CASE("scalar log kernel is std::log") {
  const auto xs = log_inputs();
  std::vector<double> out(xs.size());
  kernels::log_batch(Isa::Scalar, xs.data(), out.data(), xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(out[i] == std::log(xs[i]));
}

TEST_CASE("AVX2 log matches the scalar reference") {
  if (!kernels::isa_available(Isa::Avx2)) {
    MESSAGE("AVX2 not available on this CPU; equivalence test skipped");
    return;
  }
  const auto xs = log_inputs();
  std::vector<double> ref(xs.size()), simd(xs.size());
  kernels::log_batch(Isa::Scalar, xs.data(), ref.data(), xs.size());
  kernels::log_batch(Isa::Avx2, xs.data(), simd.data(), xs.size());
  double worst = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    // Absolute error near log(x) = 0, relative elsewhere.
    const double err = std::fabs(simd[i] - ref[i]) / std::max(1.0, std::fabs(ref[i]));
    worst = std::max(worst, err);
  }
  CHECK(worst < 4e-16);
}

TEST_CASE("phi row kernels agree with each other and with the long double phi") {
  const std::size_t m = 203;  // not a multiple of the vector width
  for (auto [r, s] : {std::pair{3, 2}, std::pair{2, 3}, std::pair{4, 5}, std::pair{9, 6}, std::pair{2, 5}}) {
    const double amax = 1.0 / (s - 1);
    for (double frac : {0.0, 0.013, 0.37, 0.5, 0.999, 1.0}) {
      const double alpha = amax * frac;
      std::vector<double> beta(m), ref(m), simd(m);
      for (std::size_t j = 0; j < m; ++j) beta[j] = static_cast<double>(j) / (m - 1) * 1.02 - 0.01;
      kernels::phi_row(Isa::Scalar, alpha, beta.data(), m, r, s, ref.data());
      kernels::phi_row(Isa::Avx2, alpha, beta.data(), m, r, s, simd.data());
      for (std::size_t j = 0; j < m; ++j) {
        CAPTURE(r);
        CAPTURE(s);
        CAPTURE(alpha);
        CAPTURE(beta[j]);
        if (std::isinf(ref[j])) {
          CHECK(std::isinf(simd[j]));
          CHECK_THROWS_AS(phi({alpha, beta[j]}, r, s), DomainError);
          continue;
        }
        CHECK(std::fabs(simd[j] - ref[j]) <= 1e-13 * std::max(1.0, std::fabs(ref[j])));
        const double exact = static_cast<double>(phi({alpha, beta[j]}, r, s));
        CHECK(std::fabs(ref[j] - exact) <= 1e-12 * std::max(1.0, std::fabs(exact)));
      }
    }
  }
}

TEST_CASE("dispatch reports an available ISA") {
  const Isa active = kernels::active_isa();
  CHECK(kernels::isa_available(active));
  CHECK(kernels::isa_available(Isa::Scalar));
  CHECK(std::string(kernels::isa_name(Isa::Scalar)) == "scalar");
}
