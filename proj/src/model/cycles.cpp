#include "hypertree/cycles.hpp"

#include <algorithm>
#include <vector>

#include "hypertree/error.hpp"

namespace hypertree {
namespace {

struct Overlap {
  int size = 0;
  Vertex first = -1;  // smallest shared vertex, -1 if none
};

// Edges are sorted and loop-free here, so a merge gives the set intersection.
Overlap overlap(std::span<const Vertex> a, std::span<const Vertex> b) {
  Overlap o;
  std::size_t i = 0, k = 0;
  while (i < a.size() && k < b.size()) {
    if (a[i] < b[k]) {
      ++i;
    } else if (b[k] < a[i]) {
      ++k;
    } else {
      if (o.size == 0) o.first = a[i];
      ++o.size;
      ++i;
      ++k;
    }
  }
  return o;
}

class LooseCycleSearch {
 public:
  LooseCycleSearch(const Hypergraph& h, const std::vector<std::vector<std::uint32_t>>& adj,
                   int j_max, CycleCensus& census)
      : h_(h), adj_(adj), j_max_(j_max), census_(census), on_path_(h.num_edges(), 0),
        seen_(static_cast<std::size_t>(h.n()), 0) {}

  void run() {
    for (std::uint32_t start = 0; start < adj_.size(); ++start) {
      if (adj_[start].empty()) continue;
      path_.assign(1, start);
      on_path_[start] = 1;
      extend();
      on_path_[start] = 0;
    }
  }

 private:
  bool disjoint(std::uint32_t a, std::uint32_t b) const {
    return overlap(h_.edge(a), h_.edge(b)).size == 0;
  }

  // A candidate closing edge must avoid path[1..k-2] and meet path[0] once.
  bool closes(std::uint32_t nb) const {
    const std::size_t k = path_.size();
    if (nb <= path_[1]) return false;
    if (overlap(h_.edge(nb), h_.edge(path_[0])).size != 1) return false;
    for (std::size_t i = 1; i + 1 < k; ++i) {
      if (!disjoint(nb, path_[i])) return false;
    }
    return true;
  }

  std::size_t union_size(std::uint32_t last) {
    ++stamp_;
    std::size_t distinct = 0;
    auto mark = [&](std::uint32_t e) {
      for (Vertex v : h_.edge(e)) {
        auto& slot = seen_[static_cast<std::size_t>(v)];
        if (slot != stamp_) {
          slot = stamp_;
          ++distinct;
        }
      }
    };
    for (std::uint32_t e : path_) mark(e);
    mark(last);
    return distinct;
  }

  void extend() {
    const std::size_t k = path_.size();
    const auto s = static_cast<std::size_t>(h_.edge_size());
    for (std::uint32_t nb : adj_[path_.back()]) {
      if (nb <= path_[0] || on_path_[nb]) continue;
      const std::size_t len = k + 1;
      if (len >= 3 && closes(nb) && union_size(nb) == (s - 1) * len) {
        ++census_.counts[static_cast<int>(len)];
      }
      if (static_cast<int>(len) >= j_max_) continue;
      bool ok = true;
      for (std::size_t i = 0; i + 1 < k && ok; ++i) ok = disjoint(nb, path_[i]);
      if (!ok) continue;
      path_.push_back(nb);
      on_path_[nb] = 1;
      extend();
      on_path_[nb] = 0;
      path_.pop_back();
    }
  }

  const Hypergraph& h_;
  const std::vector<std::vector<std::uint32_t>>& adj_;
  int j_max_;
  CycleCensus& census_;
  std::vector<std::uint32_t> path_;
  std::vector<char> on_path_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
};

}  // namespace

CycleCensus census_cycles(const Hypergraph& h, int j_max) {
  if (j_max < 1) throw ValidationError("census needs j_max >= 1");
  CycleCensus census;
  for (int j = 1; j <= j_max; ++j) census.counts[j] = 0;

  const std::size_t m = h.num_edges();
  std::vector<char> loop(m, 0);
  std::vector<std::vector<std::uint32_t>> incident(static_cast<std::size_t>(h.n()));
  for (std::uint32_t i = 0; i < m; ++i) {
    auto e = h.edge(i);
    loop[i] = std::adjacent_find(e.begin(), e.end()) != e.end();
    if (loop[i]) {
      ++census.counts[1];
      continue;
    }
    for (Vertex v : e) incident[static_cast<std::size_t>(v)].push_back(i);
  }

  // Visit each intersecting pair once, at its smallest shared vertex.
  std::vector<std::vector<std::uint32_t>> adj(m);
  for (std::uint32_t a = 0; a < m; ++a) {
    if (loop[a]) continue;
    for (Vertex v : h.edge(a)) {
      for (std::uint32_t b : incident[static_cast<std::size_t>(v)]) {
        if (b <= a) continue;
        const Overlap o = overlap(h.edge(a), h.edge(b));
        if (o.first != v) continue;
        if (o.size == 1) {
          adj[a].push_back(b);
          adj[b].push_back(a);
        } else if (o.size == 2) {
          if (j_max >= 2) ++census.counts[2];
        } else {
          ++census.overlaps[o.size];
        }
      }
    }
  }
  if (j_max >= 3) LooseCycleSearch(h, adj, j_max, census).run();
  return census;
}

CycleCensus census_cycles(const Configuration& config, int j_max) {
  return census_cycles(project(config), j_max);
}

}  // namespace hypertree
