#include "hypertree/exact_enum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypertree/cycles.hpp"
#include "hypertree/error.hpp"
#include "hypertree/spanning.hpp"

namespace hypertree {
namespace {

// Calls visit for every vector of `parts` nonnegative integers summing to total.
void for_each_composition(std::int64_t total, std::size_t parts,
                          const std::function<void(const std::vector<std::int64_t>&)>& visit) {
  std::vector<std::int64_t> k(parts, 0);
  if (parts == 0) {
    if (total == 0) visit(k);
    return;
  }
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i + 1 == parts) {
      k[i] = left;
      visit(k);
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      k[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, total);
}

std::int64_t exact_div(std::int64_t num, std::int64_t den, const char* what) {
  if (num % den != 0) {
    throw DomainError(std::string(what) + " = " + std::to_string(num) + "/" + std::to_string(den) +
                      " is not an integer");
  }
  return num / den;
}

mpz_class pow_z(std::int64_t base, std::int64_t e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return out;
}

long double lfact(std::int64_t n) { return std::lgamma(static_cast<long double>(n) + 1.0L); }

// Factorial arguments of a_n(k, b), all asserted integral.
struct TermArgs {
  std::int64_t s_exp;  // (n+b-2)/(s-1)
  std::int64_t half;   // (b-1)/(s-1)
  std::int64_t tail;   // (rs-r-s)n/(s(s-1)) - (b-2)/(s-1)
  std::int64_t rest;   // (n-(s-1)k-b)/(s-1)
  std::int64_t top;    // (r-1)n-k-b
};

TermArgs term_args(const ModelParams& p, std::int64_t k, std::int64_t b) {
  const std::int64_t r = p.r, s = p.s, n = p.n;
  TermArgs a{};
  a.s_exp = exact_div(n + b - 2, s - 1, "(n+b-2)/(s-1)");
  a.half = exact_div(b - 1, s - 1, "(b-1)/(s-1)");
  a.tail = exact_div((r * s - r - s) * n - s * (b - 2), s * (s - 1),
                     "(rs-r-s)n/(s(s-1)) - (b-2)/(s-1)");
  a.rest = exact_div(n - (s - 1) * k - b, s - 1, "(n-(s-1)k-b)/(s-1)");
  a.top = (r - 1) * n - k - b;
  return a;
}

bool term_vanishes(std::int64_t k, std::int64_t b, const TermArgs& a) {
  return b <= 1 || k < 0 || a.tail < 0 || a.rest < 0 || a.top < 0;
}

}  // namespace

mpz_class num_partitions(std::int64_t t, int s) {
  if (s < 1 || t < 0 || t % s != 0) {
    throw ValidationError("p(t) needs s | t, got t=" + std::to_string(t) + " s=" + std::to_string(s));
  }
  const std::int64_t blocks = t / s;
  return factorial(t) / (factorial(blocks) * pow_z(static_cast<std::int64_t>(factorial(s).get_ui()), blocks));
}

mpz_class count_uniform_trees(std::int64_t n, int s) {
  if (n < 1 || s < 2 || (n - 1) % (s - 1) != 0) {
    throw ValidationError("trees need (s-1) | (n-1), got n=" + std::to_string(n) +
                          " s=" + std::to_string(s));
  }
  const std::int64_t t = (n - 1) / (s - 1);
  if (t == 0) return 1;
  ExactQ v(pow_z(n, t - 1) * factorial(n - 1));
  v /= ExactQ(factorial(t) * pow_z(static_cast<std::int64_t>(factorial(s - 1).get_ui()), t));
  return require_integer(v, "tree count");
}

void validate_degree_sequence(const TreeDegreeSequence& seq, int s) {
  const auto n = static_cast<std::int64_t>(seq.delta.size());
  if (s < 2 || n < 2 || (n - 1) % (s - 1) != 0) {
    throw ValidationError("degree sequence needs n >= 2 and (s-1) | (n-1)");
  }
  std::int64_t sum = 0;
  for (std::int64_t d : seq.delta) {
    if (d < 1) throw ValidationError("tree degrees must be >= 1");
    sum += d;
  }
  if (sum != s * (n - 1) / (s - 1)) {
    throw ValidationError("degree sum " + std::to_string(sum) + " != s(n-1)/(s-1)");
  }
}

mpz_class count_trees_with_degrees(const TreeDegreeSequence& seq, int s) {
  validate_degree_sequence(seq, s);
  const auto n = static_cast<std::int64_t>(seq.delta.size());
  const std::int64_t t = (n - 1) / (s - 1);
  ExactQ v(mpz_class(s - 1) * factorial(n - 2));
  mpz_class den = pow_z(static_cast<std::int64_t>(factorial(s - 1).get_ui()), t);
  for (std::int64_t d : seq.delta) den *= factorial(d - 1);
  v /= ExactQ(den);
  return require_integer(v, "degree-sequence tree count");
}

void for_each_degree_sequence(std::int64_t n, int s,
                              const std::function<void(const TreeDegreeSequence&)>& visit) {
  if (n < 2 || s < 2 || (n - 1) % (s - 1) != 0) {
    throw ValidationError("degree sequences need n >= 2 and (s-1) | (n-1)");
  }
  const std::int64_t t = (n - 1) / (s - 1);
  TreeDegreeSequence seq;
  // delta_i - 1 are nonnegative and sum to t - 1.
  for_each_composition(t - 1, static_cast<std::size_t>(n), [&](const std::vector<std::int64_t>& k) {
    seq.delta.assign(k.begin(), k.end());
    for (auto& d : seq.delta) d += 1;
    visit(seq);
  });
}

std::vector<Hypergraph> enumerate_uniform_trees(std::int64_t n, int s, std::uint64_t budget) {
  if (n < 1 || s < 2 || (n - 1) % (s - 1) != 0) {
    throw ValidationError("trees need (s-1) | (n-1)");
  }
  std::vector<Hypergraph> out;
  if (n == 1) {
    out.emplace_back(1, s);
    return out;
  }
  const Hypergraph complete = complete_hypergraph(n, s);
  for_each_spanning_tree(complete, budget, [&](std::span<const std::size_t> tree) {
    if (out.size() >= budget) throw BudgetExceeded("tree enumeration exceeded budget");
    Hypergraph h(n, s);
    for (std::size_t i : tree) h.add_edge(complete.edge(i));
    out.push_back(std::move(h));
  });
  return out;
}

void for_each_configuration(const ModelParams& params, std::uint64_t budget,
                            const std::function<void(std::span<const Point>)>& visit) {
  require_configurable(params);
  const std::int64_t total = params.points();
  if (num_partitions(total, params.s) > mpz_class(std::to_string(budget))) {
    throw BudgetExceeded("p(" + std::to_string(total) + ") exceeds enumeration budget " +
                         std::to_string(budget));
  }
  const auto s = static_cast<std::size_t>(params.s);
  const auto r = params.r;
  std::vector<char> used(static_cast<std::size_t>(total), 0);
  std::vector<Point> flat;
  flat.reserve(static_cast<std::size_t>(total));
  auto point = [r](std::int64_t idx) {
    return Point{static_cast<Vertex>(idx / r), static_cast<std::int32_t>(idx % r)};
  };

  // Fill the part containing the smallest unused point, then recurse.
  std::function<void()> next_part;
  std::function<void(std::int64_t, std::size_t)> fill = [&](std::int64_t from, std::size_t left) {
    if (left == 0) {
      next_part();
      return;
    }
    for (std::int64_t i = from; i < total; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      used[static_cast<std::size_t>(i)] = 1;
      flat.push_back(point(i));
      fill(i + 1, left - 1);
      flat.pop_back();
      used[static_cast<std::size_t>(i)] = 0;
    }
  };
  next_part = [&]() {
    std::int64_t first = 0;
    while (first < total && used[static_cast<std::size_t>(first)]) ++first;
    if (first == total) {
      visit(flat);
      return;
    }
    used[static_cast<std::size_t>(first)] = 1;
    flat.push_back(point(first));
    fill(first + 1, s - 1);
    flat.pop_back();
    used[static_cast<std::size_t>(first)] = 0;
  };
  next_part();
}

std::vector<Configuration> enumerate_configurations(const ModelParams& params, std::uint64_t budget) {
  std::vector<Configuration> out;
  for_each_configuration(params, budget, [&](std::span<const Point> flat) {
    out.emplace_back(params, std::vector<Point>(flat.begin(), flat.end()));
  });
  return out;
}

ExactQ exact_expected_Y(const ModelParams& params) {
  require_admissible(params);
  const std::int64_t r = params.r, s = params.s, n = params.n;
  const std::int64_t t = params.tree_edges();
  const std::int64_t last =
      exact_div((r * s - r - s) * n + s, s * (s - 1), "((rs-r-s)n+s)/(s(s-1))");
  ExactQ v(pow_z(r, n) * pow_z(s, t) * factorial((r - 1) * n) * factorial(n - 1) *
           factorial(r * n / s));
  v /= ExactQ(factorial(r * n) * factorial(t) * factorial(last));
  return v;
}

ExactQ expected_Y_by_subpartitions(const ModelParams& params) {
  require_admissible(params);
  const std::int64_t r = params.r, s = params.s, n = params.n;
  const std::int64_t t = params.tree_edges();
  if (n == 1) return 1;
  // Each tree with degrees delta has prod_v (r)_{delta_v} subpartitions; summing
  // over degree sequences collapses to a single binomial.
  mpz_class subpartitions = pow_z(r, n) * (s - 1) * factorial(n - 2) * binomial((r - 1) * n, t - 1);
  ExactQ v = make_q(subpartitions, pow_z(static_cast<std::int64_t>(factorial(s - 1).get_ui()), t));
  v *= make_q(num_partitions(r * n - s * t, params.s), num_partitions(r * n, params.s));
  return v;
}

long double log_expected_Y(const ModelParams& params) {
  require_admissible(params);
  const std::int64_t r = params.r, s = params.s, n = params.n;
  const std::int64_t t = params.tree_edges();
  const std::int64_t last =
      exact_div((r * s - r - s) * n + s, s * (s - 1), "((rs-r-s)n+s)/(s(s-1))");
  return static_cast<long double>(n) * std::log(static_cast<long double>(r)) +
         static_cast<long double>(t) * std::log(static_cast<long double>(s)) + lfact((r - 1) * n) +
         lfact(n - 1) + lfact(r * n / s) - lfact(r * n) - lfact(t) - lfact(last);
}

ExactQ brute_moments(const ModelParams& params, std::span<const int> x, int y_power,
                     std::uint64_t budget) {
  require_configurable(params);
  if (y_power < 0) throw ValidationError("negative power of Y");
  for (int xi : x) {
    if (xi < 0) throw ValidationError("negative falling-factorial order");
  }
  const bool need_census = std::any_of(x.begin(), x.end(), [](int v) { return v > 0; });
  const int j_max = std::max<int>(1, static_cast<int>(x.size()));
  const auto s = static_cast<std::size_t>(params.s);
  mpz_class sum = 0;
  std::vector<Vertex> cells(s);
  for_each_configuration(params, budget, [&](std::span<const Point> flat) {
    Hypergraph h(params.n, params.s);
    for (std::size_t i = 0; i < flat.size(); i += s) {
      for (std::size_t k = 0; k < s; ++k) cells[k] = flat[i + k].cell;
      h.add_edge(cells);
    }
    const std::uint64_t y = params.tree_divisible ? count_spanning_trees(h) : 0;
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), y, static_cast<unsigned long>(y_power));
    if (term == 0) return;
    if (need_census) {
      const CycleCensus census = census_cycles(h, j_max);
      for (std::size_t j = 0; j < x.size(); ++j) {
        term *= falling(census.count(static_cast<int>(j + 1)), x[j]);
      }
    }
    sum += term;
  });
  return make_q(sum, num_partitions(params.points(), params.s));
}

ExactQ second_moment_term(const ModelParams& params, std::int64_t k, std::int64_t b) {
  require_admissible(params);
  if (b <= 1) return 0;
  const TermArgs a = term_args(params, k, b);
  if (term_vanishes(k, b, a)) return 0;
  const std::int64_t r = params.r, s = params.s, n = params.n;
  // The (s-1)^k factor comes from z = (r-1)(s-1) in Chu's identity.
  mpz_class num = pow_z(r, n) * (b - 1) * pow_z(r - 1, k + b) * pow_z(s - 1, k) * pow_z(s, a.s_exp) *
                  factorial(k + b - 2) * factorial(a.top) * factorial(r * n / s) * factorial(n);
  mpz_class den = mpz_class(b) * factorial(k) * factorial(a.half) * factorial(a.half) *
                  factorial(a.tail) * factorial(a.rest) * factorial(r * n);
  return make_q(num, den);
}

std::optional<long double> log_second_moment_term(const ModelParams& params, std::int64_t k,
                                                  std::int64_t b) {
  require_admissible(params);
  if (b <= 1) return std::nullopt;
  const TermArgs a = term_args(params, k, b);
  if (term_vanishes(k, b, a)) return std::nullopt;
  const long double r = params.r, s = params.s;
  const std::int64_t n = params.n;
  long double v = static_cast<long double>(n) * std::log(r) +
                  std::log(static_cast<long double>(b - 1)) +
                  static_cast<long double>(k + b) * std::log(r - 1) +
                  static_cast<long double>(k) * std::log(s - 1) +
                  static_cast<long double>(a.s_exp) * std::log(s) + lfact(k + b - 2) + lfact(a.top) +
                  lfact(params.r * n / params.s) + lfact(n);
  v -= std::log(static_cast<long double>(b)) + lfact(k) + 2 * lfact(a.half) + lfact(a.tail) +
       lfact(a.rest) + lfact(params.r * n);
  return v;
}

SecondMoment exact_second_moment(const ModelParams& params, MomentMode mode,
                                 std::int64_t exact_limit) {
  require_admissible(params);
  const std::int64_t s = params.s, n = params.n;
  SecondMoment out;
  out.mode = mode;
  if (mode == MomentMode::Exact) {
    if (params.points() > exact_limit) {
      throw BudgetExceeded("exact second moment refused for rn = " +
                           std::to_string(params.points()));
    }
    ExactQ sum = exact_expected_Y(params);
    for (std::int64_t b = s; b <= n; b += s - 1) {
      for (std::int64_t k = 0; k <= (n - b) / (s - 1); ++k) {
        const ExactQ term = second_moment_term(params, k, b);
        if (term != 0) {
          sum += term;
          ++out.terms;
        }
      }
    }
    out.log_value = log_abs(sum);
    out.exact = sum;
    return out;
  }
  std::vector<long double> logs{log_expected_Y(params)};
  for (std::int64_t b = s; b <= n; b += s - 1) {
    for (std::int64_t k = 0; k <= (n - b) / (s - 1); ++k) {
      if (auto v = log_second_moment_term(params, k, b)) {
        logs.push_back(*v);
        ++out.terms;
      }
    }
  }
  const long double top = *std::max_element(logs.begin(), logs.end());
  long double acc = 0;
  for (long double v : logs) acc += std::exp(v - top);
  out.log_value = top + std::log(acc);
  return out;
}

bool chu_identity_check(int m, int b, std::span<const ExactQ> xs, const ExactQ& z) {
  if (m < 1 || b < 1 || static_cast<int>(xs.size()) != b) {
    throw ValidationError("Chu identity needs m, b >= 1 and b values of x");
  }
  ExactQ lhs = 0;
  for_each_composition(m, static_cast<std::size_t>(b), [&](const std::vector<std::int64_t>& k) {
    ExactQ prod = 1;
    for (std::size_t i = 0; i < k.size(); ++i) prod *= gen_binomial(xs[i] + k[i] * z, k[i]);
    lhs += prod;
  });
  ExactQ xsum = 0;
  for (const ExactQ& x : xs) xsum += x;
  ExactQ rhs = 0;
  for (std::int64_t k = 0; k <= m; ++k) {
    rhs += gen_binomial(ExactQ(k + b - 2), k) * gen_binomial(xsum + m * z - k, m - k) * pow_q(z, k);
  }
  return lhs == rhs;
}

TreeSumCheck tree_sum(const ModelParams& params, std::int64_t b, std::uint64_t budget) {
  require_admissible(params);
  const std::int64_t r = params.r, s = params.s, n = params.n;
  if (b < 2 || b > n || (b - 1) % (s - 1) != 0) {
    throw ValidationError("tree sum needs 2 <= b <= n and (s-1) | (b-1)");
  }
  const std::int64_t m = (n - b) / (s - 1);
  if (binomial(m + b - 1, b - 1) > mpz_class(std::to_string(budget))) {
    throw BudgetExceeded("too many compositions for the direct tree sum");
  }
  TreeSumCheck out;
  for_each_composition(m, static_cast<std::size_t>(b), [&](const std::vector<std::int64_t>& k) {
    mpz_class prod = 1;
    for (std::int64_t ki : k) {
      const std::int64_t nu = 1 + (s - 1) * ki;
      prod *= binomial((r - 1) * nu - 1, ki);
    }
    out.direct += prod;
  });
  for (std::int64_t k = 0; k <= m; ++k) {
    const mpz_class base = binomial(k + b - 2, k) * binomial((r - 1) * n - b - k, m - k);
    out.closed += base * pow_z((r - 1) * (s - 1), k);
    out.closed_bare += base * pow_z(r - 1, k);
  }
  return out;
}

bool jensen_tree_sum_check(const ModelParams& params, std::int64_t b, std::uint64_t budget) {
  const TreeSumCheck c = tree_sum(params, b, budget);
  return c.direct == c.closed;
}

}  // namespace hypertree
