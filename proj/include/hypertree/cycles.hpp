#pragma once

#include <cstdint>
#include <map>

#include "hypertree/hypergraph.hpp"

namespace hypertree {

/// Short-cycle counts of a configuration.
///
/// counts[1] is the number of parts with a repeated cell. For j >= 2,
/// counts[j] is the number of loose j-cycles among loop-free parts, each
/// counted once regardless of rotation or reflection. `overlaps[m]` records
/// pairs of loop-free parts sharing m >= 3 cells, which are neither loose
/// 2-cycles nor part of any loose cycle.
struct CycleCensus {
  std::map<int, std::int64_t> counts;
  std::map<int, std::int64_t> overlaps;

  std::int64_t count(int j) const {
    auto it = counts.find(j);
    return it == counts.end() ? 0 : it->second;
  }
};

/// Throws ValidationError if j_max < 1. counts has an entry for every
/// 1 <= j <= j_max, zero or not.
CycleCensus census_cycles(const Configuration& config, int j_max);

/// Same census on an already projected hypergraph (edge i = part i).
CycleCensus census_cycles(const Hypergraph& h, int j_max);

}  // namespace hypertree
