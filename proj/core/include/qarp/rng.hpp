#pragma once

#include <cstdint>
#include <random>

namespace qarp {

/// Mixes a seed with a stream of salt words so that independent components
/// (sweep cells, repetitions, split indices) get decorrelated generators
/// from one user-facing seed.
uint64_t mix_seed(uint64_t seed, std::initializer_list<uint64_t> salt);

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64{seed}; }

}  // namespace qarp
