#pragma once

#include <cstdint>
#include <random>

#include "orbithull/birkhoff.hpp"
#include "orbithull/core.hpp"
#include "orbithull/majorization.hpp"

namespace orbithull {

/// Seeded generators for tests, the CLI and acceptance runs.
using Rng = std::mt19937_64;

Rng make_rng(std::uint64_t seed);

double uniform(Rng& rng, double lo = 0.0, double hi = 1.0);
int uniform_int(Rng& rng, int lo, int hi);  // inclusive bounds
/// Entries uniform in [-1, 1] x [-1, 1]i.
CVector random_tuple(Rng& rng, Eigen::Index n);
/// Real entries uniform in [-1, 1].
CVector random_real_tuple(Rng& rng, Eigen::Index n);
/// Haar-distributed unitary (QR of a complex Gaussian with phase fix).
CMatrix random_unitary(Rng& rng, Eigen::Index n);
Permutation random_permutation(Rng& rng, Eigen::Index n);
/// Probability vector from normalized exponential samples.
RVector random_simplex(Rng& rng, Eigen::Index n);
/// Convex combination of `terms` random permutations.
DoublyStochastic random_doubly_stochastic(Rng& rng, Eigen::Index n, int terms);
/// U diag(values) U^* with a random unitary U.
CMatrix random_normal(Rng& rng, const CVector& values);

}  // namespace orbithull
