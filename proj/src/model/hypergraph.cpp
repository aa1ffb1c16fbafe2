#include "hypertree/hypergraph.hpp"

#include <algorithm>
#include <string>

#include "hypertree/error.hpp"
#include "hypertree/union_find.hpp"

namespace hypertree {

Hypergraph::Hypergraph(std::int64_t n, int edge_size) : n_(n), edge_size_(edge_size) {
  if (n < 1) throw ValidationError("hypergraph needs n >= 1");
  if (edge_size < 0) throw ValidationError("negative edge size");
}

Hypergraph::Hypergraph(std::int64_t n, const std::vector<std::vector<Vertex>>& edges)
    : Hypergraph(n, edges.empty() ? 0 : static_cast<int>(edges.front().size())) {
  for (const auto& e : edges) add_edge(std::span<const Vertex>(e));
}

void Hypergraph::add_edge(std::span<const Vertex> vertices) {
  if (num_edges() == 0 && edge_size_ == 0) edge_size_ = static_cast<int>(vertices.size());
  if (static_cast<int>(vertices.size()) != edge_size_) {
    throw ValidationError("edge of size " + std::to_string(vertices.size()) +
                          " in a " + std::to_string(edge_size_) + "-uniform hypergraph");
  }
  for (Vertex v : vertices) {
    if (v < 0 || v >= n_) throw ValidationError("vertex " + std::to_string(v) + " out of range");
  }
  const auto first = slots_.size();
  slots_.insert(slots_.end(), vertices.begin(), vertices.end());
  std::sort(slots_.begin() + static_cast<std::ptrdiff_t>(first), slots_.end());
}

std::vector<std::vector<Vertex>> Hypergraph::edge_list() const {
  std::vector<std::vector<Vertex>> out;
  out.reserve(num_edges());
  for (std::size_t i = 0; i < num_edges(); ++i) {
    auto e = edge(i);
    out.emplace_back(e.begin(), e.end());
  }
  return out;
}

Configuration::Configuration(const ModelParams& params, std::vector<Point> flat_parts)
    : params_(params), points_(std::move(flat_parts)) {
  require_configurable(params_);
  const auto total = static_cast<std::size_t>(params_.points());
  if (points_.size() != total) {
    throw ValidationError("configuration has " + std::to_string(points_.size()) +
                          " points, expected " + std::to_string(total));
  }
  std::vector<char> seen(total, 0);
  for (const Point& p : points_) {
    if (p.cell < 0 || p.cell >= params_.n || p.slot < 0 || p.slot >= params_.r) {
      throw ValidationError("point out of range");
    }
    auto& flag = seen[static_cast<std::size_t>(p.cell) * static_cast<std::size_t>(params_.r) +
                      static_cast<std::size_t>(p.slot)];
    if (flag) throw ValidationError("point appears twice in configuration");
    flag = 1;
  }
  const auto s = static_cast<std::size_t>(params_.s);
  const std::size_t parts = points_.size() / s;
  for (std::size_t i = 0; i < parts; ++i) {
    std::sort(points_.begin() + static_cast<std::ptrdiff_t>(i * s),
              points_.begin() + static_cast<std::ptrdiff_t>((i + 1) * s));
  }
  // Sort parts lexicographically via an index permutation.
  std::vector<std::size_t> order(parts);
  for (std::size_t i = 0; i < parts; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(points_.begin() + static_cast<std::ptrdiff_t>(a * s),
                                        points_.begin() + static_cast<std::ptrdiff_t>((a + 1) * s),
                                        points_.begin() + static_cast<std::ptrdiff_t>(b * s),
                                        points_.begin() + static_cast<std::ptrdiff_t>((b + 1) * s));
  });
  std::vector<Point> sorted;
  sorted.reserve(points_.size());
  for (std::size_t i : order) {
    sorted.insert(sorted.end(), points_.begin() + static_cast<std::ptrdiff_t>(i * s),
                  points_.begin() + static_cast<std::ptrdiff_t>((i + 1) * s));
  }
  points_ = std::move(sorted);
}

Hypergraph project(const Configuration& config) {
  const auto& p = config.params();
  Hypergraph h(p.n, p.s);
  std::vector<Vertex> cells(static_cast<std::size_t>(p.s));
  for (std::size_t i = 0; i < config.num_parts(); ++i) {
    auto part = config.part(i);
    for (std::size_t k = 0; k < part.size(); ++k) cells[k] = part[k].cell;
    h.add_edge(cells);
  }
  return h;
}

bool is_simple(const Hypergraph& h) {
  const std::size_t m = h.num_edges();
  for (std::size_t i = 0; i < m; ++i) {
    auto e = h.edge(i);
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) return false;
  }
  std::vector<std::span<const Vertex>> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) edges.push_back(h.edge(i));
  auto less = [](std::span<const Vertex> a, std::span<const Vertex> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  };
  std::sort(edges.begin(), edges.end(), less);
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (std::equal(edges[i - 1].begin(), edges[i - 1].end(), edges[i].begin(), edges[i].end())) {
      return false;
    }
  }
  return true;
}

bool is_connected(const Hypergraph& h) {
  RollbackDisjointSets sets(static_cast<std::size_t>(h.n()));
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    auto e = h.edge(i);
    for (std::size_t k = 1; k < e.size(); ++k) sets.unite(e[0], e[k]);
  }
  return sets.components() == 1;
}

Hypergraph complete_hypergraph(std::int64_t n, int s) {
  if (s < 1 || s > n) throw ValidationError("complete hypergraph needs 1 <= s <= n");
  Hypergraph h(n, s);
  std::vector<Vertex> comb(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) comb[static_cast<std::size_t>(i)] = i;
  while (true) {
    h.add_edge(comb);
    int i = s - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - s + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < s; ++k) {
      comb[static_cast<std::size_t>(k)] = comb[static_cast<std::size_t>(k - 1)] + 1;
    }
  }
  return h;
}

}  // namespace hypertree
