#pragma once

// Synthetic dataset generators: a banana-shaped pair of interleaved
// crescents, two interleaved spirals, and Gaussian blobs. All balanced,
// two-dimensional, and deterministic given the seed.

#include <cstdint>

#include "lincomb/core.hpp"

namespace lincomb {

// Two crescents inside roughly x1 in [-1.5, 2.5], x2 in [-1.5, 2].
LabeledDataset make_banana(int n, std::uint64_t seed, double noise = 0.2);

// Two interleaved Archimedean spirals.
LabeledDataset make_spirals(int n, std::uint64_t seed, double noise = 0.1,
                            double turns = 1.5);

// Two spherical Gaussian clouds separated along the first axis.
LabeledDataset make_gaussians(int n, std::uint64_t seed, double separation = 2.0,
                              int dim = 2);

}  // namespace lincomb
