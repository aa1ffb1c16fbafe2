#pragma once

#include <cstdint>
#include <random>

#include "hypertree/hypergraph.hpp"
#include "hypertree/params.hpp"

namespace hypertree {

using Rng = std::mt19937_64;

/// Seed used by the CLI and the Monte Carlo drivers when none is given.
inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024ULL;

/// Deterministic per-task seed derived from (seed, index) with a splitmix64
/// finalizer, so results do not depend on how tasks are scheduled.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform random element of Omega_{n,r,s}: a uniform permutation of the rn
/// points cut into consecutive blocks of s, then canonicalized.
Configuration sample_configuration(const ModelParams& params, std::uint64_t seed);
Configuration sample_configuration(const ModelParams& params, Rng& rng);

/// Rejection sampler for the uniform simple hypergraph. Throws RejectionLimit
/// after `max_rejects` non-simple draws. `rejections`, if given, receives the
/// number of discarded configurations.
Hypergraph sample_simple_hypergraph(const ModelParams& params, std::uint64_t seed,
                                    std::int64_t max_rejects,
                                    std::int64_t* rejections = nullptr);

}  // namespace hypertree
