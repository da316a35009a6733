#pragma once

#include <cstdint>

#include "qarp/dataset.hpp"

namespace qarp {

/// Isotropic Gaussian blobs, one per class, balanced. Centers are drawn
/// uniformly in [-10, 10]^d, redrawn (up to 100 times) until they are at
/// least 4*std apart and their directions at least 1 rad apart, so the
/// clusters stay separated after per-sample normalization.
Dataset gen_blobs(int n_features, int n_classes, int n_samples, double std_dev, uint64_t seed);

/// Two concentric circles (outer radius 1, inner radius = factor) with
/// Gaussian jitter, evenly spaced angles, balanced classes.
Dataset gen_circles(int n_samples, double factor, uint64_t seed, double jitter = 0.05);

/// Two interleaving half circles with Gaussian jitter.
Dataset gen_moons(int n_samples, uint64_t seed, double jitter = 0.05);

/// Four Gaussian blobs at (+-offset, +-offset); diagonally opposite blobs
/// share a class.
Dataset gen_xor(int n_samples, uint64_t seed, double offset = 1.0, double std_dev = 0.3);

/// Fixed-shape synthetic stand-ins for the bundled tabular benchmarks, used
/// where the original files cannot be redistributed or fetched. Shapes and
/// class ratios follow the published descriptions.
Dataset gen_pima_like(uint64_t seed);      // 768 x 8, classes 500/268
Dataset gen_banknote_like(uint64_t seed);  // 1372 x 4, classes 762/610
Dataset gen_haberman_like(uint64_t seed);  // 306 x 3, classes 225/81

}  // namespace qarp
