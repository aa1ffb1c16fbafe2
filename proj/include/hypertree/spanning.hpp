#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include <gmpxx.h>

#include "hypertree/hypergraph.hpp"

namespace hypertree {

/// Default cap on candidate-edge tests in the backtracking tree search.
inline constexpr std::uint64_t kDefaultTreeBudget = 100'000'000ULL;

/// True iff the chosen edges form a spanning tree: exactly (n-1)/(s-1) of
/// them, each merging s previously distinct components. Returns false when
/// (s-1) does not divide (n-1). Throws ValidationError on an index >= m.
bool is_spanning_tree(const Hypergraph& h, std::span<const std::size_t> subset);

/// Calls `visit` with the (increasing) edge indices of every spanning tree.
/// Edge positions are distinct objects, so repeated edges count separately.
/// Throws BudgetExceeded once more than `budget` candidate tests are made.
void for_each_spanning_tree(const Hypergraph& h, std::uint64_t budget,
                            const std::function<void(std::span<const std::size_t>)>& visit);

/// Number of spanning trees (subsets of edge positions).
std::uint64_t count_spanning_trees(const Hypergraph& h,
                                   std::uint64_t budget = kDefaultTreeBudget);

/// Whether at least one spanning tree exists; std::nullopt if the search ran
/// out of budget before deciding.
std::optional<bool> has_spanning_tree(const Hypergraph& h,
                                      std::uint64_t budget = kDefaultTreeBudget);

/// Matrix-tree theorem count for 2-uniform multigraphs (loops ignored), via
/// fraction-free elimination on the reduced Laplacian.
mpz_class kirchhoff_count(const Hypergraph& h);

}  // namespace hypertree
