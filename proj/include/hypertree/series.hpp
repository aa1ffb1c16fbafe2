#pragma once

#include <cstddef>
#include <vector>

#include "hypertree/exact_q.hpp"

namespace hypertree {

/// Truncated power series with exact coefficients c[0..order].
class SeriesQ {
 public:
  explicit SeriesQ(std::size_t order) : c_(order + 1, ExactQ(0)) {}
  SeriesQ(std::size_t order, std::vector<ExactQ> coeffs);

  std::size_t order() const { return c_.size() - 1; }
  const ExactQ& operator[](std::size_t i) const { return c_[i]; }
  ExactQ& operator[](std::size_t i) { return c_[i]; }
  const std::vector<ExactQ>& coeffs() const { return c_; }

  /// coeff * x^power.
  static SeriesQ monomial(std::size_t order, std::size_t power, const ExactQ& coeff = 1);
  /// 1/(1 - a x) truncated.
  static SeriesQ geometric(std::size_t order, const ExactQ& a);

  friend SeriesQ operator+(const SeriesQ& a, const SeriesQ& b);
  friend SeriesQ operator-(const SeriesQ& a, const SeriesQ& b);
  friend SeriesQ operator*(const SeriesQ& a, const SeriesQ& b);
  friend SeriesQ operator*(const ExactQ& k, const SeriesQ& a);
  friend bool operator==(const SeriesQ&, const SeriesQ&) = default;

  /// 1/a; requires a[0] != 0.
  SeriesQ inverse() const;
  /// log(a); requires a[0] == 1.
  SeriesQ log() const;
  /// a(inner(x)); requires inner[0] == 0.
  SeriesQ compose(const SeriesQ& inner) const;

 private:
  std::vector<ExactQ> c_;
};

}  // namespace hypertree
