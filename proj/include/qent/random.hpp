#pragma once

// Seeded Haar-random test inputs. All draws are deterministic in the seed.

#include <cstdint>
#include <random>

#include "qent/statevector.hpp"

namespace qent {

using Rng = std::mt19937_64;

/// splitmix64 mix of (seed, stream); used to give restarts and batch cases
/// independent generators.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

Vector gaussian_vector(Rng& rng, int length);
Matrix gaussian_matrix(Rng& rng, int rows, int cols);

/// Haar unitary: QR of a complex Ginibre matrix with Q rescaled so that R has
/// a real non-negative diagonal.
Matrix haar_unitary(Rng& rng, int d);

StateVector random_state(const SystemShape& shape, std::uint64_t seed);
ProductState random_product(const SystemShape& shape, std::uint64_t seed);
LocalUnitaryLayer random_local_layer(const SystemShape& shape, std::uint64_t seed);

/// G G^dag / tr, G complex Gaussian d x d (Hilbert-Schmidt measure).
DensityMatrix random_density(const SystemShape& shape, std::uint64_t seed);

}  // namespace qent
