#include "hypertree/sampling.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "hypertree/error.hpp"

namespace hypertree {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Configuration sample_configuration(const ModelParams& params, Rng& rng) {
  require_configurable(params);
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(params.points()));
  for (Vertex c = 0; c < params.n; ++c) {
    for (std::int32_t k = 0; k < params.r; ++k) points.push_back({c, k});
  }
  for (std::size_t i = points.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(points[i - 1], points[pick(rng)]);
  }
  return Configuration(params, std::move(points));
}

Configuration sample_configuration(const ModelParams& params, std::uint64_t seed) {
  Rng rng(seed);
  return sample_configuration(params, rng);
}

Hypergraph sample_simple_hypergraph(const ModelParams& params, std::uint64_t seed,
                                    std::int64_t max_rejects, std::int64_t* rejections) {
  require_configurable(params);
  Rng rng(seed);
  std::int64_t rejected = 0;
  while (true) {
    Hypergraph h = project(sample_configuration(params, rng));
    if (is_simple(h)) {
      if (rejections) *rejections = rejected;
      return h;
    }
    ++rejected;
    if (rejected >= max_rejects) {
      if (rejections) *rejections = rejected;
      throw RejectionLimit("no simple hypergraph after " + std::to_string(rejected) +
                           " rejected configurations");
    }
  }
}

}  // namespace hypertree
