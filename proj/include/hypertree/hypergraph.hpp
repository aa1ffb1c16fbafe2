#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "hypertree/params.hpp"

namespace hypertree {

using Vertex = std::int32_t;

/// A point of the configuration model: slot `slot` of cell `cell`.
struct Point {
  Vertex cell = 0;
  std::int32_t slot = 0;

  friend auto operator<=>(const Point&, const Point&) = default;
};

/// An s-uniform multi-hypergraph on [0, n). Edges are stored as sorted vertex
/// multisets so loops (repeated vertices) and repeated edges are representable.
class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(std::int64_t n, int edge_size);
  /// Throws ValidationError on ragged edges or out-of-range vertices.
  Hypergraph(std::int64_t n, const std::vector<std::vector<Vertex>>& edges);

  std::int64_t n() const { return n_; }
  int edge_size() const { return edge_size_; }
  std::size_t num_edges() const {
    return edge_size_ == 0 ? 0 : slots_.size() / static_cast<std::size_t>(edge_size_);
  }
  std::span<const Vertex> edge(std::size_t i) const {
    return {slots_.data() + i * static_cast<std::size_t>(edge_size_),
            static_cast<std::size_t>(edge_size_)};
  }
  /// Appends an edge; the multiset is stored sorted.
  void add_edge(std::span<const Vertex> vertices);
  void add_edge(std::initializer_list<Vertex> vertices) {
    add_edge(std::span<const Vertex>(vertices.begin(), vertices.size()));
  }

  std::vector<std::vector<Vertex>> edge_list() const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::int64_t n_ = 0;
  int edge_size_ = 0;
  std::vector<Vertex> slots_;
};

/// A partition of the rn points into rn/s parts of size s. Parts are stored
/// flat (stride s); each part is sorted and the list of parts is sorted, which
/// makes equal partitions compare equal.
class Configuration {
 public:
  Configuration() = default;
  /// Validates that every point appears exactly once; canonicalizes.
  Configuration(const ModelParams& params, std::vector<Point> flat_parts);

  const ModelParams& params() const { return params_; }
  std::size_t num_parts() const {
    return points_.size() / static_cast<std::size_t>(params_.s);
  }
  std::span<const Point> part(std::size_t i) const {
    return {points_.data() + i * static_cast<std::size_t>(params_.s),
            static_cast<std::size_t>(params_.s)};
  }
  std::span<const Point> flat() const { return points_; }

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.params_ == b.params_ && a.points_ == b.points_;
  }
  friend bool operator<(const Configuration& a, const Configuration& b) {
    return a.points_ < b.points_;
  }

 private:
  ModelParams params_;
  std::vector<Point> points_;
};

/// Edge i of the result is the cell multiset of part i.
Hypergraph project(const Configuration& config);

/// No edge repeats a vertex and no two edges are equal as multisets.
bool is_simple(const Hypergraph& h);

/// Berge connectivity. An edgeless hypergraph is connected only when n == 1.
bool is_connected(const Hypergraph& h);

/// The complete s-uniform simple hypergraph on [0, n): all C(n, s) edges in
/// lexicographic order.
Hypergraph complete_hypergraph(std::int64_t n, int s);

}  // namespace hypertree
