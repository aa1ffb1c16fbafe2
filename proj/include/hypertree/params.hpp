#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hypertree {

/// The triple (r, s, n): degree, edge size and vertex count.
///
/// `rn_divisible` is the condition s | rn (a configuration exists) and
/// `tree_divisible` is (s-1) | (n-1) (a spanning tree has an integral number
/// of edges). Both together are membership in the admissible set N_(r,s).
struct ModelParams {
  int r = 2;
  int s = 2;
  std::int64_t n = 1;
  bool rn_divisible = false;
  bool tree_divisible = false;

  bool admissible() const { return rn_divisible && tree_divisible; }
  std::int64_t points() const { return static_cast<std::int64_t>(r) * n; }
  std::int64_t num_parts() const { return points() / s; }
  /// Number of edges in a spanning tree, t = (n-1)/(s-1). Requires tree_divisible.
  std::int64_t tree_edges() const { return (n - 1) / (s - 1); }
  bool is_graph_2_2() const { return r == 2 && s == 2; }

  /// Human readable list of failed divisibility conditions (empty if none).
  std::vector<std::string> failures() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Builds ModelParams with both divisibility flags. Throws ValidationError if
/// r < 2, s < 2 or n < 1; divisibility failures are reported in the flags.
ModelParams validate_params(int r, int s, std::int64_t n);

/// Throws ValidationError unless s | rn.
void require_configurable(const ModelParams& p);
/// Throws ValidationError unless n is in N_(r,s).
void require_admissible(const ModelParams& p);

/// The smallest `count` values of n in N_(r,s).
std::vector<std::int64_t> admissible_ladder(int r, int s, std::size_t count,
                                            std::int64_t start = 1);

}  // namespace hypertree
