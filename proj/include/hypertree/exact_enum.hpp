#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hypertree/exact_q.hpp"
#include "hypertree/hypergraph.hpp"
#include "hypertree/params.hpp"

namespace hypertree {

/// Cap on the number of objects an exhaustive enumeration may produce.
inline constexpr std::uint64_t kDefaultEnumBudget = 50'000'000ULL;

/// p(t): partitions of t labelled points into blocks of size s.
mpz_class num_partitions(std::int64_t t, int s);

/// Labelled s-uniform trees on n vertices.
mpz_class count_uniform_trees(std::int64_t n, int s);

struct TreeDegreeSequence {
  std::vector<std::int64_t> delta;
};

/// Throws ValidationError unless every entry is >= 1, n >= 2 and the entries
/// sum to s(n-1)/(s-1).
void validate_degree_sequence(const TreeDegreeSequence& seq, int s);

/// Trees on [0, n) in which vertex i lies in exactly delta[i] edges.
mpz_class count_trees_with_degrees(const TreeDegreeSequence& seq, int s);

/// Every sequence accepted by validate_degree_sequence for (n, s).
void for_each_degree_sequence(std::int64_t n, int s,
                              const std::function<void(const TreeDegreeSequence&)>& visit);

/// All labelled s-uniform trees on [0, n), edges in lexicographic order.
std::vector<Hypergraph> enumerate_uniform_trees(std::int64_t n, int s,
                                                std::uint64_t budget = kDefaultEnumBudget);

/// Visits every element of Omega_{n,r,s} once, already in canonical form
/// (parts sorted, parts ordered by their first point). Refuses up front with
/// BudgetExceeded if p(rn) > budget.
void for_each_configuration(const ModelParams& params, std::uint64_t budget,
                            const std::function<void(std::span<const Point>)>& visit);

std::vector<Configuration> enumerate_configurations(const ModelParams& params,
                                                    std::uint64_t budget = kDefaultEnumBudget);

/// Exact E Y over the configuration model from the closed product formula.
ExactQ exact_expected_Y(const ModelParams& params);

/// E Y computed a second way: (number of tree subpartitions) p(rn-st)/p(rn).
ExactQ expected_Y_by_subpartitions(const ModelParams& params);

/// log E Y from the closed formula through lgamma, for n beyond exact range.
long double log_expected_Y(const ModelParams& params);

/// Exhaustive average of Y^y_power * prod_j (X_j)_{x[j-1]} over Omega_{n,r,s},
/// where Y counts part subsets projecting to spanning trees.
ExactQ brute_moments(const ModelParams& params, std::span<const int> x, int y_power = 1,
                     std::uint64_t budget = kDefaultEnumBudget);

/// One term a_n(k, b) of the second-moment lattice sum, including the
/// (s-1)^k factor that the composition sum contributes. Zero for b <= 1 or
/// when a denominator factorial has a negative argument. Throws DomainError
/// if a factorial argument is not an integer.
ExactQ second_moment_term(const ModelParams& params, std::int64_t k, std::int64_t b);
/// log a_n(k, b); std::nullopt when the term vanishes.
std::optional<long double> log_second_moment_term(const ModelParams& params, std::int64_t k,
                                                  std::int64_t b);

enum class MomentMode { Exact, LogFloat };

struct SecondMoment {
  MomentMode mode = MomentMode::Exact;
  std::optional<ExactQ> exact;  // set in Exact mode
  long double log_value = 0;    // log E Y^2, set in both modes
  std::size_t terms = 0;        // nonzero lattice terms summed
};

/// E Y^2 = E Y + sum over the lattice of a_n(k, b). Exact mode refuses
/// (BudgetExceeded) when rn exceeds `exact_limit`.
SecondMoment exact_second_moment(const ModelParams& params, MomentMode mode,
                                 std::int64_t exact_limit = 20000);

/// Chu's identity at one instance, evaluated exactly on both sides.
bool chu_identity_check(int m, int b, std::span<const ExactQ> xs, const ExactQ& z);

struct TreeSumCheck {
  ExactQ direct;       // sum over compositions nu of n into b parts
  ExactQ closed;       // closed sum with factor ((r-1)(s-1))^k
  ExactQ closed_bare;  // the same sum with factor (r-1)^k only
};

/// Both sides of the composition sum that feeds the second moment.
TreeSumCheck tree_sum(const ModelParams& params, std::int64_t b,
                      std::uint64_t budget = kDefaultEnumBudget);
/// direct == closed.
bool jensen_tree_sum_check(const ModelParams& params, std::int64_t b,
                           std::uint64_t budget = kDefaultEnumBudget);

}  // namespace hypertree
