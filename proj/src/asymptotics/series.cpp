#include "hypertree/series.hpp"

#include <algorithm>

#include "hypertree/error.hpp"

namespace hypertree {

SeriesQ::SeriesQ(std::size_t order, std::vector<ExactQ> coeffs) : c_(std::move(coeffs)) {
  c_.resize(order + 1, ExactQ(0));
}

SeriesQ SeriesQ::monomial(std::size_t order, std::size_t power, const ExactQ& coeff) {
  SeriesQ out(order);
  if (power <= order) out.c_[power] = coeff;
  return out;
}

SeriesQ SeriesQ::geometric(std::size_t order, const ExactQ& a) {
  SeriesQ out(order);
  ExactQ p = 1;
  for (std::size_t i = 0; i <= order; ++i) {
    out.c_[i] = p;
    p *= a;
  }
  return out;
}

SeriesQ operator+(const SeriesQ& a, const SeriesQ& b) {
  SeriesQ out(std::min(a.order(), b.order()));
  for (std::size_t i = 0; i <= out.order(); ++i) out.c_[i] = a.c_[i] + b.c_[i];
  return out;
}

SeriesQ operator-(const SeriesQ& a, const SeriesQ& b) {
  SeriesQ out(std::min(a.order(), b.order()));
  for (std::size_t i = 0; i <= out.order(); ++i) out.c_[i] = a.c_[i] - b.c_[i];
  return out;
}

SeriesQ operator*(const SeriesQ& a, const SeriesQ& b) {
  SeriesQ out(std::min(a.order(), b.order()));
  for (std::size_t i = 0; i <= out.order(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t k = 0; i + k <= out.order(); ++k) out.c_[i + k] += a.c_[i] * b.c_[k];
  }
  return out;
}

SeriesQ operator*(const ExactQ& k, const SeriesQ& a) {
  SeriesQ out = a;
  for (auto& v : out.c_) v *= k;
  return out;
}

SeriesQ SeriesQ::inverse() const {
  if (c_[0] == 0) throw DomainError("series inverse needs a nonzero constant term");
  SeriesQ out(order());
  out.c_[0] = 1 / c_[0];
  for (std::size_t n = 1; n <= order(); ++n) {
    ExactQ acc = 0;
    for (std::size_t k = 1; k <= n; ++k) acc += c_[k] * out.c_[n - k];
    out.c_[n] = -acc / c_[0];
  }
  return out;
}

SeriesQ SeriesQ::log() const {
  if (c_[0] != 1) throw DomainError("series log needs constant term 1");
  // n L_n = n a_n - sum_{k=1}^{n-1} k L_k a_{n-k}, from L' a = a'.
  SeriesQ out(order());
  for (std::size_t n = 1; n <= order(); ++n) {
    ExactQ acc = ExactQ(static_cast<long>(n)) * c_[n];
    for (std::size_t k = 1; k < n; ++k) acc -= ExactQ(static_cast<long>(k)) * out.c_[k] * c_[n - k];
    out.c_[n] = acc / static_cast<long>(n);
  }
  return out;
}

SeriesQ SeriesQ::compose(const SeriesQ& inner) const {
  if (inner.c_[0] != 0) throw DomainError("composition needs inner constant term 0");
  const std::size_t ord = std::min(order(), inner.order());
  SeriesQ out(ord);
  // Horner: a0 + h(a1 + h(a2 + ...)).
  for (std::size_t i = ord + 1; i-- > 0;) {
    out = out * SeriesQ(ord, inner.c_);
    out.c_[0] += c_[i];
  }
  return out;
}

}  // namespace hypertree
