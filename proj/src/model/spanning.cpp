#include "hypertree/spanning.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "hypertree/error.hpp"
#include "hypertree/union_find.hpp"

namespace hypertree {
namespace {

// Merges the vertices of edge e if they currently lie in |e| distinct
// components; otherwise leaves the sets untouched and returns false.
bool try_merge(RollbackDisjointSets& sets, std::span<const Vertex> e,
               std::vector<std::int32_t>& roots) {
  roots.clear();
  for (Vertex v : e) {
    const std::int32_t root = sets.find(v);
    if (std::find(roots.begin(), roots.end(), root) != roots.end()) return false;
    roots.push_back(root);
  }
  for (std::size_t k = 1; k < roots.size(); ++k) sets.unite(roots[0], roots[k]);
  return true;
}

class TreeSearch {
 public:
  TreeSearch(const Hypergraph& h, std::uint64_t budget,
             const std::function<bool(std::span<const std::size_t>)>& visit)
      : h_(h), budget_(budget), visit_(visit), sets_(static_cast<std::size_t>(h.n())) {}

  void run() {
    const std::int64_t n = h_.n();
    if (n == 1) {
      visit_(chosen_);
      return;
    }
    const int s = h_.edge_size();
    if (s < 2 || (n - 1) % (s - 1) != 0) return;
    target_ = static_cast<std::size_t>((n - 1) / (s - 1));
    extend(0);
  }

 private:
  // Returns false when the visitor asked to stop.
  bool extend(std::size_t next) {
    if (chosen_.size() == target_) return visit_(chosen_);
    const std::size_t m = h_.num_edges();
    const std::size_t needed = target_ - chosen_.size();
    for (std::size_t j = next; j + needed <= m; ++j) {
      if (++tests_ > budget_) {
        throw BudgetExceeded("spanning tree search exceeded " + std::to_string(budget_) +
                             " candidate tests");
      }
      const std::size_t mark = sets_.checkpoint();
      if (!try_merge(sets_, h_.edge(j), roots_)) continue;
      chosen_.push_back(j);
      const bool keep_going = extend(j + 1);
      chosen_.pop_back();
      sets_.rollback(mark);
      if (!keep_going) return false;
    }
    return true;
  }

  const Hypergraph& h_;
  std::uint64_t budget_;
  const std::function<bool(std::span<const std::size_t>)>& visit_;
  RollbackDisjointSets sets_;
  std::vector<std::size_t> chosen_;
  std::vector<std::int32_t> roots_;
  std::size_t target_ = 0;
  std::uint64_t tests_ = 0;
};

}  // namespace

bool is_spanning_tree(const Hypergraph& h, std::span<const std::size_t> subset) {
  for (std::size_t i : subset) {
    if (i >= h.num_edges()) throw ValidationError("edge index " + std::to_string(i) + " out of range");
  }
  const std::int64_t n = h.n();
  if (n == 1) return subset.empty();
  const int s = h.edge_size();
  if (s < 2 || (n - 1) % (s - 1) != 0) return false;
  if (static_cast<std::int64_t>(subset.size()) != (n - 1) / (s - 1)) return false;
  RollbackDisjointSets sets(static_cast<std::size_t>(n));
  std::vector<std::int32_t> roots;
  for (std::size_t i : subset) {
    if (!try_merge(sets, h.edge(i), roots)) return false;
  }
  return sets.components() == 1;
}

void for_each_spanning_tree(const Hypergraph& h, std::uint64_t budget,
                            const std::function<void(std::span<const std::size_t>)>& visit) {
  const std::function<bool(std::span<const std::size_t>)> wrapped =
      [&](std::span<const std::size_t> tree) {
        visit(tree);
        return true;
      };
  TreeSearch(h, budget, wrapped).run();
}

std::uint64_t count_spanning_trees(const Hypergraph& h, std::uint64_t budget) {
  std::uint64_t count = 0;
  const std::function<bool(std::span<const std::size_t>)> counter =
      [&](std::span<const std::size_t>) {
        ++count;
        return true;
      };
  TreeSearch(h, budget, counter).run();
  return count;
}

std::optional<bool> has_spanning_tree(const Hypergraph& h, std::uint64_t budget) {
  bool found = false;
  const std::function<bool(std::span<const std::size_t>)> stop_at_first =
      [&](std::span<const std::size_t>) {
        found = true;
        return false;
      };
  try {
    TreeSearch(h, budget, stop_at_first).run();
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
  return found;
}

mpz_class kirchhoff_count(const Hypergraph& h) {
  if (h.num_edges() > 0 && h.edge_size() != 2) {
    throw ValidationError("matrix-tree count needs a 2-uniform hypergraph");
  }
  const auto n = static_cast<std::size_t>(h.n());
  if (n == 1) return 1;
  std::vector<std::vector<mpz_class>> lap(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    auto e = h.edge(i);
    const auto a = static_cast<std::size_t>(e[0]);
    const auto b = static_cast<std::size_t>(e[1]);
    if (a == b) continue;
    lap[a][a] += 1;
    lap[b][b] += 1;
    lap[a][b] -= 1;
    lap[b][a] -= 1;
  }
  // Bareiss elimination on the minor obtained by deleting the last row/column.
  const std::size_t d = n - 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (lap[k][k] == 0) {
      std::size_t pivot = k + 1;
      while (pivot < d && lap[pivot][k] == 0) ++pivot;
      if (pivot == d) return 0;
      std::swap(lap[k], lap[pivot]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < d; ++i) {
      for (std::size_t j = k + 1; j < d; ++j) {
        lap[i][j] = (lap[i][j] * lap[k][k] - lap[i][k] * lap[k][j]) / prev;
      }
    }
    prev = lap[k][k];
  }
  mpz_class det = lap[d - 1][d - 1] * sign;
  return det;
}

}  // namespace hypertree
